//! Hand transcriptions of published polynomials, keyed by golden path.

use invforge_core::invariants::abstract_table;
use invforge_core::{Polynomial, Ring};

fn p(n: usize, s: &str) -> Polynomial {
    Polynomial::parse(s, &abstract_table(n), Ring::F2).unwrap()
}

const L4: &str = "xi3*xi1^2+xi2^3+xi1^5";
const L43: &str = "xi4*xi1^2+xi3^2*xi2+xi2^4*xi1";
const L42: &str = "xi4*xi2^2+xi3^3+xi1^9";
const L41: &str = "xi4*xi1^4+xi3*xi2^4+xi2*xi1^8";

/// Ω₄ and Ω₄± as printed, i.e. written over Λ₄ and the Λ₄,ᵢ.
fn omega4() -> [(&'static str, Polynomial); 3] {
    let q = |s: &str| p(2, s);
    let (l, l3, l2, l1) = (q(L4), q(L43), q(L42), q(L41));
    let x = q("X");
    let xp = |e: u32| x.pow(e).unwrap();
    let sq = |a: &Polynomial| a.square().unwrap();
    let tail = &q("xi1^4") * &l3 + (q("xi2^4+xi2*xi1^5") * &l);
    let mid = &l2 + &(q("xi1*xi3") * &l);
    let full = sq(&l) * xp(16) + sq(&l3) * xp(8) + sq(&l2) * xp(4) + sq(&l1) * xp(2) + l.pow(4).unwrap() * xp(1) + &tail * &mid;
    let plus = &l * &xp(10)
        + q("xi1^2") * &l * xp(7)
        + (&l3 + &(q("xi1*xi2") * &l)) * xp(6)
        + q("xi2^2") * &l * xp(5)
        + (&l2 + &(q("xi1*xi3+xi1^4") * &l)) * xp(4)
        + q("xi2^2*xi1^2") * &l * xp(2)
        + q("xi1^6") * &l * xp(1)
        + tail;
    let minus = &l * &xp(6) + q("xi1^2") * &l * xp(3) + (&l3 + &(q("xi1*xi2") * &l)) * xp(2) + q("xi2^2") * &l * xp(1) + mid;
    [("omega/n2.txt", full), ("omega_plus/n2.txt", plus), ("omega_minus/n2.txt", minus)]
}

pub fn reference() -> Vec<(&'static str, Polynomial)> {
    let mut v: Vec<(&'static str, Polynomial)> = vec![
        ("lambda/n1.txt", p(1, "xi1")),
        ("lambda_i/n1_i1.txt", p(1, "xi2")),
        ("lambda_i/n1_i0.txt", p(1, "xi1^2")),
        ("lambda/n2.txt", p(2, L4)),
        ("lambda_i/n2_i3.txt", p(2, L43)),
        ("lambda_i/n2_i2.txt", p(2, L42)),
        ("lambda_i/n2_i1.txt", p(2, L41)),
        ("lambda_i/n2_i0.txt", p(2, "xi3^2*xi1^4+xi2^6+xi1^10")),
        (
            "lambda/n3.txt",
            p(3, "xi5*xi3^2*xi1^4+xi5*xi2^6+xi5*xi1^10+xi4^3*xi1^4+xi4^2*xi3*xi2^4\
                  +xi4^2*xi2*xi1^8+xi4*xi3^4*xi2^2+xi4*xi2^8*xi1^2+xi3^7+xi3^4*xi1^9\
                  +xi3^2*xi2^9+xi3*xi1^18+xi2^12*xi1+xi2^3*xi1^16+xi1^21"),
        ),
        (
            "lambda_i/n3_i5.txt",
            p(3, "xi6*xi3^2*xi1^4+xi6*xi2^6+xi6*xi1^10+xi5^2*xi4*xi1^4+xi5^2*xi3*xi2^4\
                  +xi5^2*xi2*xi1^8+xi4^5*xi2^2+xi4^4*xi3^3+xi4^4*xi1^9+xi4*xi3^8*xi1^2\
                  +xi3^10*xi2+xi3^8*xi2^4*xi1+xi3*xi2^16*xi1^2+xi2^19+xi2^16*xi1^5"),
        ),
        (
            "lambda_i/n3_i4.txt",
            p(3, "xi6*xi4^2*xi1^4+xi6*xi3^4*xi2^2+xi6*xi2^8*xi1^2+xi5^3*xi1^4+xi5^2*xi3^5\
                  +xi5^2*xi2^9+xi5*xi4^4*xi2^2+xi5*xi3^8*xi1^2+xi4^6*xi3+xi4^4*xi2^8*xi1\
                  +xi4^2*xi3^8*xi2+xi3^12*xi1+xi3*xi1^34+xi2^3*xi1^32+xi1^37"),
        ),
        (
            "lambda_i/n3_i3.txt",
            p(3, "xi6*xi4^2*xi2^4+xi6*xi3^6+xi6*xi1^18+xi5^3*xi2^4+xi5^2*xi4*xi3^4\
                  +xi5^2*xi2*xi1^16+xi5*xi4^4*xi3^2+xi5*xi2^16*xi1^2+xi4^7+xi4^4*xi1^17\
                  +xi4^2*xi2^17+xi4*xi1^34+xi3^4*xi2^16*xi1+xi3^2*xi2*xi1^32+xi2^4*xi1^33"),
        ),
        (
            "lambda_i/n3_i2.txt",
            p(3, "xi6*xi4^2*xi1^8+xi6*xi3^2*xi2^8+xi6*xi2^2*xi1^16+xi5^3*xi1^8+xi5^2*xi4*xi2^8\
                  +xi5^2*xi3*xi1^16+xi5*xi3^10+xi5*xi2^18+xi4^3*xi3^8+xi4^2*xi3*xi2^16\
                  +xi4*xi2^2*xi1^32+xi3^8*xi1^17+xi3^3*xi1^32+xi2^24*xi1+xi1^41"),
        ),
        (
            "lambda_i/n3_i1.txt",
            p(3, "xi6*xi3^4*xi1^8+xi6*xi2^12+xi6*xi1^20+xi5*xi4^4*xi1^8+xi5*xi3^8*xi2^4\
                  +xi5*xi2^16*xi1^4+xi4^5*xi2^8+xi4^4*xi3*xi1^16+xi4*xi3^12+xi4*xi1^36\
                  +xi3^8*xi2*xi1^16+xi3^5*xi2^16+xi3*xi2^4*xi1^32+xi2^25+xi2*xi1^40"),
        ),
        ("omega/n1.txt", p(1, "xi1^2*X^4+xi2^2*X^2+xi1^4*X+xi1^3*xi2")),
        ("omega_plus/n1.txt", p(1, "xi1*X^3+xi2*X^2+xi1^3")),
        ("omega_minus/n1.txt", p(1, "xi1*X+xi2")),
        ("alpha_plus/n1_l0.txt", p(1, "X")),
        ("alpha_plus/n1_l1.txt", p(1, "X^3+xi1^2")),
        ("alpha_minus/n1_l0.txt", p(1, "1")),
        ("alpha_minus/n1_l1.txt", p(1, "X")),
        ("alpha_plus/n2_l0.txt", p(2, "X")),
        ("alpha_plus/n2_l1.txt", p(2, "X^3+xi1^2")),
        (
            "alpha_plus/n2_l2.txt",
            p(2, "X^10+xi1^2*X^7+xi2*xi1*X^6+xi2^2*X^5+xi3*xi1*X^4+xi1^4*X^4+xi2^2*xi1^2*X^2+xi1^6*X+xi2^4+xi2*xi1^5"),
        ),
        ("alpha_minus/n2_l0.txt", p(2, "1")),
        ("alpha_minus/n2_l1.txt", p(2, "X")),
        ("alpha_minus/n2_l2.txt", p(2, "X^6+xi1^2*X^3+xi2*xi1*X^2+xi2^2*X+xi3*xi1")),
        ("chern/n1_q_plus.txt", p(1, "X^3+c1*X^2+xi1^2")),
        ("chern/n1_q_minus.txt", p(1, "X+c1")),
        ("chern/n1_p_plus.txt", p(1, "t^3+d1*t^2+xi0*t+xi0*d1+xi1")),
        ("chern/n1_p_minus.txt", p(1, "t+d1")),
        (
            "chern/n2_q_plus.txt",
            p(2, "X^10+xi1^2*X^7+c3*X^6+xi1*xi2*X^6+xi2^2*X^5+c2*X^4+xi1*xi3*X^4+xi1^4*X^4\
                  +xi1^2*xi2^2*X^2+xi1^6*X+xi1^4*c3+xi1^5*xi2+xi2^4"),
        ),
        ("chern/n2_q_minus.txt", p(2, "X^6+xi1^2*X^3+c3*X^2+xi1*xi2*X^2+xi2^2*X+c2+xi1*xi3")),
        ("chern/n2_p_minus.txt", p(2, "t^6+xi0*t^4+xi1*t^3+d3*t^2+xi2*t+xi1*xi0*t+d2")),
        (
            "chern/n2_p_plus.txt",
            p(2, "t^10+xi0*t^8+xi1*t^7+d3*t^6+xi0^2*t^6+xi2*t^5+xi1*xi0*t^5+d2*t^4+xi1^2*t^4+xi0^3*t^4\
                  +xi1*xi0^2*t^3+xi0^2*d3*t^2+xi2*xi1*t^2+xi2*xi0^2*t+xi1*xi0^3*t+xi1^3*t\
                  +xi0^2*d2+xi1^2*d3+xi2^2+xi2*xi1*xi0"),
        ),
        ("relations/n2_c1.txt", p(2, "xi1^2*c3+xi3*xi2+xi2*xi1^3")),
        ("relations/n2_c0.txt", p(2, L4)),
        ("relations/n2_xi4.txt", p(2, "xi3*c3+xi1^3*c3+xi2*c2+xi3*xi2*xi1+xi2*xi1^4")),
        ("relations/n2_c3.txt", p(2, "d3^2+xi2*xi1+xi1^2*xi0+xi0^4")),
        ("relations/n2_c2.txt", p(2, "d2^2+xi0^2*d3^2+xi3*xi1+xi2^2*xi0")),
        ("relations/n2_xi3.txt", p(2, "xi1*d2+xi2*d3+xi1*xi0*d3+xi2*xi0^2+xi1^3")),
        ("relations/n2_sp_relation.txt", p(2, "xi1^2*c2+xi2^2*c3+xi1^3*xi3+xi1*xi2^3+xi3^2+xi1^6")),
    ];
    v.extend(omega4());
    v
}
