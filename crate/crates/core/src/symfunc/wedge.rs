use super::element::SymElement;
use super::straighten::{straighten, QuasiIndex, Straightened};
use crate::error::{Error, Result};

/// The wedge product `Sym_a x Sym_b -> Sym_{a+b}`,
/// `s_λ ∧ s_μ = s_{(λ_1 - b, ..., λ_a - b, μ_1, ..., μ_b)}` extended bilinearly.
pub fn wedge(a: usize, b: usize, x: &SymElement, y: &SymElement) -> Result<SymElement> {
    check_rows(x, a)?;
    check_rows(y, b)?;
    let mut out = SymElement::zero().truncate(a + b);
    for (lambda, c) in x.iter() {
        for (mu, d) in y.iter() {
            let mut entries: Vec<i64> = lambda
                .padded(a)
                .into_iter()
                .map(|p| p as i64 - b as i64)
                .collect();
            entries.extend(mu.padded(b).into_iter().map(|p| p as i64));
            let q = QuasiIndex::new(entries).expect("shifted entries always satisfy the bound");
            if let Straightened::Signed(sign, p) = straighten(&q) {
                let coeff = c * d;
                out.add_term(p, if sign < 0 { -coeff } else { coeff });
            }
        }
    }
    Ok(out)
}

fn check_rows(x: &SymElement, rows: usize) -> Result<()> {
    match x.iter().find(|(p, _)| p.len() > rows) {
        Some((p, _)) => Err(Error::TooManyRows {
            partition: p.parts().to_vec(),
            bound: rows,
        }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::Partition;

    fn s(v: &[usize]) -> SymElement {
        SymElement::schur(Partition::new(v.to_vec()))
    }

    #[test]
    fn examples() {
        assert!(wedge(1, 1, &s(&[1]), &s(&[1])).unwrap().is_zero());
        assert_eq!(
            wedge(2, 1, &s(&[2, 2]), &s(&[1])).unwrap(),
            s(&[1, 1, 1]).truncate(3)
        );
        assert!(wedge(1, 1, &s(&[]), &s(&[])).unwrap().is_zero());
        assert_eq!(wedge(1, 1, &s(&[1]), &s(&[])).unwrap(), s(&[]).truncate(2));
    }

    #[test]
    fn rejects_long_rows() {
        assert!(wedge(1, 1, &s(&[1, 1]), &s(&[])).is_err());
    }

    #[test]
    fn anticommutes_in_degree_one() {
        // Sym_1 generators s_(k) behave like exterior generators
        for i in 0..4 {
            for j in 0..4 {
                let l = wedge(1, 1, &s(&[i]), &s(&[j])).unwrap();
                let r = wedge(1, 1, &s(&[j]), &s(&[i])).unwrap();
                assert_eq!(l, -r, "i={i} j={j}");
            }
        }
    }
}
