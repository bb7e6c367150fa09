use rug::Float;

/// Diagonal recurrence coefficients of the weight `(1-x)^{An}(1+x)^{Bn}`:
///
/// ```text
/// a = 4(1+A+B)(1+A)(1+B) / (((2+A+B)² - 1/n²)(2+A+B)²)
/// b = (B² - A²) / ((2+A+B)(2+A+B+2/n))
/// ```
///
/// These are the classical Jacobi coefficients with `α = An`, `β = Bn`.
pub fn jacobi_recurrence_closed(a: &Float, b: &Float, n: usize) -> (Float, Float) {
    let prec = a.prec().max(b.prec());
    let n = Float::with_val(prec, n);
    let s = Float::with_val(prec, a + b) + 2u32;
    let s2 = Float::with_val(prec, s.square_ref());
    let inv_n2 = Float::with_val(prec, n.square_ref()).recip();
    let num = (Float::with_val(prec, a + b) + 1u32) * (Float::with_val(prec, a + 1u32)) * (Float::with_val(prec, b + 1u32)) * 4u32;
    let a_nn = num / (Float::with_val(prec, &s2 - &inv_n2) * &s2);
    let diff = Float::with_val(prec, b.square_ref()) - Float::with_val(prec, a.square_ref());
    let b_nn = diff / (Float::with_val(prec, &s + Float::with_val(prec, 2u32 / &n)) * &s);
    (a_nn, b_nn)
}
