//! Canonical printing: terms in descending graded-lex order of the monomial,
//! parametric coefficients expanded into one printed term per parameter
//! power (ascending), so that the output re-parses to the same polynomial.

use super::Polynomial;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::fmt;

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (ev, coeff) in self.terms().rev() {
            for (pow, q) in coeff.param_terms() {
                let mag = q.abs();
                if first {
                    if q.is_negative() {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if q.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }

                let mut factors: Vec<String> = Vec::new();
                if pow > 0 {
                    let name = self.param().unwrap_or("t");
                    factors.push(power_str(name, pow));
                }
                for (i, &e) in ev.entries().iter().enumerate() {
                    if e > 0 {
                        factors.push(power_str(&self.varnames()[i], e));
                    }
                }

                if factors.is_empty() {
                    write!(f, "{mag}")?;
                } else {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "{}", factors.join("*"))?;
                }
            }
        }
        Ok(())
    }
}

fn power_str(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

#[allow(dead_code)]
pub fn rational_str(q: &BigRational) -> String {
    q.to_string()
}

#[cfg(test)]
mod tests {
    use crate::poly::parse_poly;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn canonical_ordering() {
        let v = vars(&["x", "y", "z"]);
        let p = parse_poly("y^3*z^2 + z^5 + x^5 + y^6", &v, None).unwrap();
        assert_eq!(p.to_string(), "y^6 + x^5 + y^3*z^2 + z^5");
    }

    #[test]
    fn signs_and_rationals() {
        let v = vars(&["x", "y"]);
        let p = parse_poly("-x^2 + 1/2*x*y - y^2", &v, None).unwrap();
        assert_eq!(p.to_string(), "-x^2 + 1/2*x*y - y^2");
    }

    #[test]
    fn parametric_terms_expand() {
        let v = vars(&["x", "y"]);
        let p = parse_poly("t^3*x^4*y^5 + t^5*x^4*y^5 + x^10", &v, Some("t")).unwrap();
        assert_eq!(p.to_string(), "x^10 + t^3*x^4*y^5 + t^5*x^4*y^5");
    }

    #[test]
    fn print_parse_roundtrip() {
        let v = vars(&["x", "y", "z"]);
        for text in [
            "x^5 + y^6 + z^5 + y^3*z^2",
            "x^13 + y^20 + z*x^6*y^5 + t*x^6*y^8 + t^2*x^10*y^3 + z^7",
            "-2*x + 3/4*y*z - z^2",
        ] {
            let p = parse_poly(text, &v, Some("t")).unwrap();
            let reparsed = parse_poly(&p.to_string(), &v, Some("t")).unwrap();
            assert_eq!(p, reparsed);
        }
        let zero = parse_poly("x - x", &v, None).unwrap();
        assert_eq!(zero.to_string(), "0");
        let zero_again = parse_poly("0", &v, None).unwrap();
        assert!(zero_again.is_zero());
    }
}
