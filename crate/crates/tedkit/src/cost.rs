//! Edit-cost models: substitution, deletion and insertion costs over node
//! labels, kept in exact rational arithmetic.
//!
//! All rational inputs of one model are rescaled to a common denominator
//! when the model is built, so the engines work in plain scaled integers
//! and every equality assertion is exact. Decimal input like `1.25` is
//! read exactly as a fraction over a power of ten.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Scaled integer cost; the owning [`CostModel`] holds the denominator.
pub type Cost = i64;

/// Nonnegative rational, always reduced, denominator positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den > 0, "denominator must be positive");
        let g = gcd(num, den).max(1);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::new(n, 1)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid rational '{0}'")]
pub struct RationalParseError(String);

impl FromStr for Rational {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Rational, RationalParseError> {
        let bad = || RationalParseError(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let num: i64 = p.trim().parse().map_err(|_| bad())?;
            let den: i64 = q.trim().parse().map_err(|_| bad())?;
            if den <= 0 {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        } else if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = int.trim_start().starts_with('-');
            let whole: i64 = int.trim().parse().map_err(|_| bad())?;
            let den = 10i64.pow(frac.len() as u32);
            let frac_num: i64 = frac.parse().map_err(|_| bad())?;
            let num = whole * den + if neg { -frac_num } else { frac_num };
            Ok(Rational::new(num, den))
        } else {
            let num: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(Rational::new(num, 1))
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CostTableError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: negative cost")]
    Negative { line: usize },
    #[error("missing 'default {0}' entry")]
    MissingDefault(&'static str),
}

/// Immutable cost model. `sub`, `del` and `ins` return costs already
/// scaled by [`CostModel::scale`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostModel {
    scale: i64,
    default_sub: Cost,
    default_del: Cost,
    default_ins: Cost,
    sub_overrides: HashMap<(String, String), Cost>,
    del_overrides: HashMap<String, Cost>,
    ins_overrides: HashMap<String, Cost>,
    /// Builtin models charge nothing for substituting a label by itself
    /// (overrides still win in user tables).
    zero_on_equal: bool,
}

impl CostModel {
    /// Unit costs: substitution 1 (0 on equal labels), deletion 1,
    /// insertion 1.
    pub fn builtin_unit() -> CostModel {
        CostModel {
            scale: 1,
            default_sub: 1,
            default_del: 1,
            default_ins: 1,
            sub_overrides: HashMap::new(),
            del_overrides: HashMap::new(),
            ins_overrides: HashMap::new(),
            zero_on_equal: true,
        }
    }

    /// The cost model of the worked golden examples: substitution 1
    /// (0 on equal labels), deletion 2, insertion 2.
    pub fn builtin_paper() -> CostModel {
        CostModel {
            scale: 1,
            default_sub: 1,
            default_del: 2,
            default_ins: 2,
            sub_overrides: HashMap::new(),
            del_overrides: HashMap::new(),
            ins_overrides: HashMap::new(),
            zero_on_equal: true,
        }
    }

    /// Parses a line-oriented cost-table document. Recognized lines:
    ///
    /// ```text
    /// default sub 1
    /// default del 2
    /// default ins 2
    /// sub a b 5
    /// del a 3
    /// ins b 3/2
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored. All three
    /// defaults are required. Lookups are override-then-default; unlike
    /// the builtin models, the default substitution cost also applies to
    /// equal labels unless overridden.
    pub fn from_table(text: &str) -> Result<CostModel, CostTableError> {
        let mut default_sub = None;
        let mut default_del = None;
        let mut default_ins = None;
        let mut sub_overrides: Vec<((String, String), Rational)> = Vec::new();
        let mut del_overrides: Vec<(String, Rational)> = Vec::new();
        let mut ins_overrides: Vec<(String, Rational)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let malformed = |message: &str| CostTableError::Malformed {
                line,
                message: message.to_string(),
            };
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parse_cost = |s: &str| -> Result<Rational, CostTableError> {
                let r: Rational = s.parse().map_err(|_| CostTableError::Malformed {
                    line,
                    message: format!("invalid cost '{s}'"),
                })?;
                if r.is_negative() {
                    return Err(CostTableError::Negative { line });
                }
                Ok(r)
            };
            match fields.as_slice() {
                ["default", "sub", v] => default_sub = Some(parse_cost(v)?),
                ["default", "del", v] => default_del = Some(parse_cost(v)?),
                ["default", "ins", v] => default_ins = Some(parse_cost(v)?),
                ["sub", a, b, v] => {
                    sub_overrides.push(((a.to_string(), b.to_string()), parse_cost(v)?))
                }
                ["del", a, v] => del_overrides.push((a.to_string(), parse_cost(v)?)),
                ["ins", b, v] => ins_overrides.push((b.to_string(), parse_cost(v)?)),
                _ => return Err(malformed("expected default/sub/del/ins entry")),
            }
        }

        let default_sub = default_sub.ok_or(CostTableError::MissingDefault("sub"))?;
        let default_del = default_del.ok_or(CostTableError::MissingDefault("del"))?;
        let default_ins = default_ins.ok_or(CostTableError::MissingDefault("ins"))?;

        Ok(CostModel::from_rationals(
            default_sub,
            default_del,
            default_ins,
            sub_overrides,
            del_overrides,
            ins_overrides,
        ))
    }

    /// Builds a table-style model directly from rational values; same
    /// semantics as [`CostModel::from_table`].
    pub fn from_rationals(
        default_sub: Rational,
        default_del: Rational,
        default_ins: Rational,
        sub_overrides: Vec<((String, String), Rational)>,
        del_overrides: Vec<(String, Rational)>,
        ins_overrides: Vec<(String, Rational)>,
    ) -> CostModel {
        let mut scale = 1i64;
        for r in [default_sub, default_del, default_ins]
            .iter()
            .chain(sub_overrides.iter().map(|(_, r)| r))
            .chain(del_overrides.iter().map(|(_, r)| r))
            .chain(ins_overrides.iter().map(|(_, r)| r))
        {
            scale = lcm(scale, r.den);
        }
        let fit = |r: &Rational| r.num * (scale / r.den);
        CostModel {
            scale,
            default_sub: fit(&default_sub),
            default_del: fit(&default_del),
            default_ins: fit(&default_ins),
            sub_overrides: sub_overrides
                .iter()
                .map(|(k, r)| (k.clone(), fit(r)))
                .collect(),
            del_overrides: del_overrides.iter().map(|(k, r)| (k.clone(), fit(r))).collect(),
            ins_overrides: ins_overrides.iter().map(|(k, r)| (k.clone(), fit(r))).collect(),
            zero_on_equal: false,
        }
    }

    /// Common denominator every returned cost is scaled by.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn sub(&self, a: &str, b: &str) -> Cost {
        if let Some(&c) = self
            .sub_overrides
            .get(&(a.to_string(), b.to_string()))
        {
            return c;
        }
        if a == b && self.zero_on_equal {
            return 0;
        }
        self.default_sub
    }

    pub fn del(&self, a: &str) -> Cost {
        *self.del_overrides.get(a).unwrap_or(&self.default_del)
    }

    pub fn ins(&self, b: &str) -> Cost {
        *self.ins_overrides.get(b).unwrap_or(&self.default_ins)
    }

    /// Model computing the distance with the argument trees swapped:
    /// deletions and insertions trade places and substitution pairs are
    /// transposed. Needed when an engine reorders its inputs under an
    /// asymmetric model.
    pub fn transpose(&self) -> CostModel {
        CostModel {
            scale: self.scale,
            default_sub: self.default_sub,
            default_del: self.default_ins,
            default_ins: self.default_del,
            sub_overrides: self
                .sub_overrides
                .iter()
                .map(|((a, b), &c)| ((b.clone(), a.clone()), c))
                .collect(),
            del_overrides: self.ins_overrides.clone(),
            ins_overrides: self.del_overrides.clone(),
            zero_on_equal: self.zero_on_equal,
        }
    }

    /// Renders a scaled cost as a reduced rational.
    pub fn display(&self, cost: Cost) -> String {
        Rational::new(cost, self.scale).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_unit_values() {
        let m = CostModel::builtin_unit();
        assert_eq!(m.sub("a", "a"), 0);
        assert_eq!(m.sub("a", "b"), 1);
        assert_eq!(m.del("x"), 1);
        assert_eq!(m.ins("x"), 1);
    }

    #[test]
    fn builtin_paper_values() {
        let m = CostModel::builtin_paper();
        assert_eq!(m.sub("c", "g"), 1);
        assert_eq!(m.sub("d", "d"), 0);
        assert_eq!(m.ins("f"), 2);
        assert_eq!(m.del("f"), 2);
    }

    #[test]
    fn table_override_then_default() {
        let m = CostModel::from_table(
            "default sub 1\ndefault del 2\ndefault ins 2\nsub a b 5\ndel a 3\n",
        )
        .unwrap();
        assert_eq!(m.sub("a", "b"), 5);
        assert_eq!(m.sub("b", "a"), 1);
        assert_eq!(m.sub("x", "y"), 1);
        assert_eq!(m.del("a"), 3);
        assert_eq!(m.del("b"), 2);
        assert_eq!(m.ins("b"), 2);
    }

    #[test]
    fn table_rejects_negative_and_garbage() {
        let err =
            CostModel::from_table("default sub 1\ndefault del -1\ndefault ins 2\n").unwrap_err();
        assert_eq!(err, CostTableError::Negative { line: 2 });
        assert!(matches!(
            CostModel::from_table("default sub\n").unwrap_err(),
            CostTableError::Malformed { line: 1, .. }
        ));
        assert_eq!(
            CostModel::from_table("default sub 1\ndefault del 2\n").unwrap_err(),
            CostTableError::MissingDefault("ins")
        );
    }

    #[test]
    fn zero_cost_is_legal() {
        let m = CostModel::from_table("default sub 1\ndefault del 0\ndefault ins 2\n").unwrap();
        assert_eq!(m.del("x"), 0);
    }

    #[test]
    fn rationals_share_a_denominator() {
        let m = CostModel::from_table(
            "default sub 1/2\ndefault del 2\ndefault ins 4/3\nsub a b 5/6\n",
        )
        .unwrap();
        assert_eq!(m.scale(), 6);
        assert_eq!(m.sub("x", "y"), 3);
        assert_eq!(m.del("x"), 12);
        assert_eq!(m.ins("x"), 8);
        assert_eq!(m.sub("a", "b"), 5);
        assert_eq!(m.display(m.sub("a", "b")), "5/6");
        assert_eq!(m.display(m.del("x")), "2");
    }

    #[test]
    fn decimal_input_is_exact() {
        let r: Rational = "1.25".parse().unwrap();
        assert_eq!(r, Rational::new(5, 4));
    }

    #[test]
    fn transpose_swaps_roles() {
        let m = CostModel::from_table(
            "default sub 1\ndefault del 3\ndefault ins 4\nsub a b 5\ndel x 7\n",
        )
        .unwrap();
        let t = m.transpose();
        assert_eq!(t.del("q"), 4);
        assert_eq!(t.ins("x"), 7);
        assert_eq!(t.sub("b", "a"), 5);
        assert_eq!(t.sub("a", "b"), 1);
    }
}
