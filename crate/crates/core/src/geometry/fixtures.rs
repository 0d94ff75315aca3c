//! The worked examples: the fourfolds over F_2, F_3 and Q, their K3
//! surfaces, and the quaternion algebra of the rank-one surface.

use num_bigint::BigInt;

use crate::mpoly::{default_names, parse, Integers, MultiPoly, RationalFunction};

/// The fourfold over Q whose reductions are [`C2_FOURFOLD`] and [`C3_FOURFOLD`].
pub const Q_FOURFOLD: &str = "2*X1^2*Y1 + 3*X1^2*Y2 + X1^2*Y3 + 3*X1*X2*Y1 + 3*X1*X2*Y2 + 3*X1*X3*Y1 \
    + 4*X1*X3*Y2 + 3*X1*Y2^2 + 2*X1*Y3^2 + X2^2*Y3 + 3*X2*X3*Y3 + 4*X2*Y2^2 + X3^2*Y1 + 3*X3^2*Y3 \
    + 4*X3*Y1^2 + 5*X3*Y1*Y2 + 5*X3*Y2^2 + 2*Y1^3 + 3*Y1^2*Y3 + 3*Y1*Y3^2 + 3*Y3^3";

pub const C2_FOURFOLD: &str = "X1^2*Y2 + X1^2*Y3 + X1*X2*Y1 + X1*X2*Y2 + X1*X3*Y1 + X1*Y2^2 + X2^2*Y3 \
    + X2*X3*Y3 + X3^2*Y1 + X3^2*Y3 + X3*Y1*Y2 + X3*Y2^2 + Y1^2*Y3 + Y1*Y3^2 + Y3^3";

/// Variant with the repeated factor `2*X3*Y2*Y2`; not a reduction of the lift.
pub const C3_FOURFOLD_REPEATED: &str = "2*X1^2*Y1 + X1^2*Y3 + X1*X3*Y2 + 2*X1*Y3^2 + X2^2*Y3 + X2*Y2^2 \
    + X3^2*Y1 + X3*Y1^2 + 2*X3*Y2*Y2 + 2*X3*Y2^2 + 2*Y1^3";

pub const C3_FOURFOLD: &str = "2*X1^2*Y1 + X1^2*Y3 + X1*X3*Y2 + 2*X1*Y3^2 + X2^2*Y3 + X2*Y2^2 \
    + X3^2*Y1 + X3*Y1^2 + 2*X3*Y1*Y2 + 2*X3*Y2^2 + 2*Y1^3";

/// `w^2 + alpha*w + beta = 0` over F_2.
pub const C2_ALPHA: &str = "x^2*y + y^3 + y^2*z";
pub const C2_BETA: &str = "x^5*z + x^3*y^2*z + x^2*y^3*z + x^3*y*z^2 + x^2*y^2*z^2 + y^2*z^4 + x*z^5 + y*z^5 + z^6";

/// `w^2 = f` over F_3.
pub const C3_SEXTIC: &str = "2*x^5*z + x^4*y*z + x^4*z^2 + 2*x^3*y*z^2 + x^2*y^4 + 2*x^2*y^3*z + x^2*y^2*z^2 \
    + 2*x^2*y*z^3 + x*y^3*z^2 + x*y^2*z^3 + 2*x*z^5 + y^6 + 2*y^4*z^2 + y^3*z^3";

/// The tangent conic over F_3.
pub const C3_CONIC: &str = "2*x^2 + 2*x*y + x*z + 2*y^2";

/// Upper triangle of the symmetric matrix whose determinant is the branch sextic.
pub const Q_MATRIX: [[&str; 4]; 4] = [
    ["4*x + 6*y + 2*z", "3*x + 3*y", "3*x + 4*y", "3*y^2 + 2*z^2"],
    ["3*x + 3*y", "2*z", "3*z", "4*y^2"],
    ["3*x + 4*y", "3*z", "2*x + 6*z", "4*x^2 + 5*x*y + 5*y^2"],
    ["3*y^2 + 2*z^2", "4*y^2", "4*x^2 + 5*x*y + 5*y^2", "4*x^3 + 6*x^2*z + 6*x*z^2 + 6*z^3"],
];

/// The fiber conic, coefficients of `p14^2, p14*p24, p14*p34, p24^2, p24*p34, p34^2`.
pub const Q_CONIC: [&str; 6] = ["2*x + 3*y + z", "3*x + 3*y", "3*x + 4*y", "z", "3*z", "x + 3*z"];

const ALPHA_NUM: &str = "9*x^2 + 18*x*y - 8*x*z + 9*y^2 - 12*y*z - 4*z^2";
const BETA_CUBIC: &str = "9*x^3 + 18*x^2*y + x^2*z + 9*x*y^2 + 3*x*y*z - 10*x*z^2 + 7*y^2*z - 9*y*z^2 - 3*z^3";
const L11: &str = "2*x + 3*y + z";

pub fn int_poly(nvars: usize, text: &str) -> MultiPoly<BigInt> {
    parse(&Integers, &default_names(nvars), text).expect("fixture parses")
}

pub fn q_matrix() -> Vec<Vec<MultiPoly<BigInt>>> {
    Q_MATRIX.iter().map(|row| row.iter().map(|s| int_poly(3, s)).collect()).collect()
}

/// Reference `alpha`.
pub fn q_alpha() -> RationalFunction {
    let l = int_poly(3, L11);
    let den = l.mul(&l).scale(&BigInt::from(4));
    RationalFunction::new(int_poly(3, ALPHA_NUM), den).expect("nonzero")
}

/// Reference `beta`.
pub fn q_beta() -> RationalFunction {
    let den = int_poly(3, L11).mul(&int_poly(3, ALPHA_NUM));
    RationalFunction::new(int_poly(3, BETA_CUBIC).neg(), den).expect("nonzero")
}
