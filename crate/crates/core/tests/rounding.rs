use ctt::problems::queens::queens_tensor;
use ctt::tt::{convolve_rank_one, tt_round, WeightVectors};

#[test]
fn queens_ten_rounded_to_one_in_a_million() {
    let q = queens_tensor(10).unwrap();
    let r = tt_round(&q.tensor, 1e-6).unwrap();
    assert_eq!(r.ranks(), [1, 10, 72, 284, 526, 606, 526, 284, 72, 10, 1]);
    let (c, _) = convolve_rank_one(&r, &WeightVectors::ones(&r.mode_sizes())).unwrap();
    assert_eq!(c.round(), 724.0, "{c}");
}
