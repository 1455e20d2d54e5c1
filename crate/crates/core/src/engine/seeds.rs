use crate::exact_arith::Rational;
use crate::lie_symbolic::{ad_pow, AdModule};

fn half() -> Rational {
    Rational::new(1, 2).unwrap()
}

fn inv_fact2(a: usize, b: usize) -> Rational {
    Rational::inv_factorial(a as u32) * Rational::inv_factorial(b as u32)
}

/// `(−1)^ℓ / 2^ℓ`
fn f_sign(l: usize) -> Rational {
    let p = Rational::pow2(-(l as i32));
    if l % 2 == 1 {
        -p
    } else {
        p
    }
}

/// Seed `f_{1,ℓ}` of the `f`-table:
/// `f_{1,0} = ½(X+Y)` and for `ℓ ≥ 1`
/// `f_{1,ℓ} = ((−1)^ℓ/2^ℓ) ((1/(2ℓ!)) ad_Y^ℓ X + Σ_j 1/(j!(ℓ−j)!) ad_Y^{ℓ−j} ad_X^j Y)`.
pub fn seed_f<M: AdModule>(m: &M, l: usize, x: &M::Elem, y: &M::Elem) -> M::Elem {
    if l == 0 {
        return m.scale(&m.add(x, y), &half());
    }
    let mut acc = m.scale(
        &ad_pow(m, y, l, x),
        &(Rational::inv_factorial(l as u32) * half()),
    );
    for j in 0..=l {
        let t = ad_pow(m, y, l - j, &ad_pow(m, x, j, y));
        m.add_scaled(&mut acc, &inv_fact2(j, l - j), &t);
    }
    m.scale(&acc, &f_sign(l))
}

/// Seed `g_{1,ℓ}`: `g_{1,0} = ½(X+Y)` and `g_{1,ℓ} = ad_Y^ℓ X / (ℓ! 2^{ℓ+1})`.
pub fn seed_g<M: AdModule>(m: &M, l: usize, x: &M::Elem, y: &M::Elem) -> M::Elem {
    if l == 0 {
        return m.scale(&m.add(x, y), &half());
    }
    let c = Rational::inv_factorial(l as u32) * Rational::pow2(-(l as i32 + 1));
    m.scale(&ad_pow(m, y, l, x), &c)
}

/// Both seed tables for `ℓ = 0..=max_l`, sharing the iterated brackets.
/// Entry-for-entry equal to [`seed_f`] and [`seed_g`].
pub(crate) fn seed_tables<M: AdModule>(
    m: &M,
    x: &M::Elem,
    y: &M::Elem,
    max_l: usize,
) -> (Vec<M::Elem>, Vec<M::Elem>) {
    // ad_Y^i X for i = 0..=max_l
    let mut ady_x = Vec::with_capacity(max_l + 1);
    ady_x.push(x.clone());
    for i in 1..=max_l {
        let next = m.bracket(y, &ady_x[i - 1]);
        ady_x.push(next);
    }

    let mut sums = vec![m.zero(); max_l + 1];
    // ad_X^j Y, then ad_Y applied repeatedly; ad_Y^i Y vanishes for i ≥ 1
    let mut adx_y = y.clone();
    for j in 0..=max_l {
        if j > 0 {
            adx_y = m.bracket(x, &adx_y);
        }
        let mut cur = adx_y.clone();
        for i in 0..=(max_l - j) {
            if i > 0 {
                if j == 0 {
                    break;
                }
                cur = m.bracket(y, &cur);
            }
            if i + j > 0 {
                m.add_scaled(&mut sums[i + j], &inv_fact2(j, i), &cur);
            }
        }
    }

    let mut f = Vec::with_capacity(max_l + 1);
    let mut g = Vec::with_capacity(max_l + 1);
    let h = half();
    f.push(m.scale(&m.add(x, y), &h));
    g.push(f[0].clone());
    for l in 1..=max_l {
        let inv = Rational::inv_factorial(l as u32);
        let mut acc = m.scale(&ady_x[l], &(&inv * &h));
        m.add_scaled(&mut acc, &Rational::one(), &sums[l]);
        f.push(m.scale(&acc, &f_sign(l)));
        g.push(m.scale(&ady_x[l], &(inv * Rational::pow2(-(l as i32 + 1)))));
    }
    (f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_symbolic::{expand_assoc, FreeLie, LieCombo};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn seed_examples() {
        let m = FreeLie;
        let (x, y) = (LieCombo::x(), LieCombo::y());
        let half_sum = x.plus(&y).scaled(&q(1, 2));
        assert_eq!(seed_f(&m, 0, &x, &y), half_sum);
        assert_eq!(seed_g(&m, 0, &x, &y), half_sum);

        let xy = x.bracket(&y);
        let yx = y.bracket(&x);
        let f1 = seed_f(&m, 1, &x, &y);
        assert_eq!(f1, yx.scaled(&q(-1, 4)).plus(&xy.scaled(&q(-1, 2))));
        assert_eq!(expand_assoc(&f1), expand_assoc(&xy.scaled(&q(-1, 4))));

        assert_eq!(seed_g(&m, 1, &x, &y), yx.scaled(&q(1, 4)));
        assert_eq!(seed_g(&m, 2, &x, &y), y.bracket(&yx).scaled(&q(1, 16)));
    }

    #[test]
    fn tables_match_single_seeds() {
        let m = FreeLie;
        let (x, y) = (LieCombo::x(), LieCombo::y());
        let (f, g) = seed_tables(&m, &x, &y, 6);
        for l in 0..=6 {
            assert_eq!(f[l], seed_f(&m, l, &x, &y), "f l={l}");
            assert_eq!(g[l], seed_g(&m, l, &x, &y), "g l={l}");
        }
    }
}
