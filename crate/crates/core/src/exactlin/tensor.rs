use num_bigint::BigInt;

use super::LinAlgError;

/// Closed form of `det(Id_4 - eps * A ⊗ B)` for `A, B ∈ GL_2(Z)`, in terms of
/// traces `t_a`, `t_b` and determinants `d_a`, `d_b` (each ±1).
pub fn tensor_det_identity(
    t_a: &BigInt,
    t_b: &BigInt,
    d_a: i64,
    d_b: i64,
    eps: i64,
) -> Result<BigInt, LinAlgError> {
    for (name, v) in [("d_a", d_a), ("d_b", d_b), ("eps", eps)] {
        if v != 1 && v != -1 {
            return Err(LinAlgError::Sign { name, value: v });
        }
    }
    let eps_ta = t_a * eps;
    let four = BigInt::from(4);
    Ok(match (d_a, d_b) {
        (1, 1) => {
            let d = t_b - &eps_ta;
            &d * &d
        }
        (-1, -1) => {
            let s = t_b + &eps_ta;
            -(&s * &s)
        }
        (-1, 1) => -(t_b * t_b - t_a * t_a - four),
        _ => t_b * t_b - t_a * t_a + four,
    })
}

/// `det(Id_2 - A) = 1 - t_a + d_a` for a 2×2 matrix.
pub fn det_id_minus_2x2(t_a: &BigInt, d_a: &BigInt) -> BigInt {
    BigInt::from(1) - t_a + d_a
}
