//! The summation-theorem table: free variables, side conditions, left-hand
//! series and right-hand closed forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gamma::{gamma_rational, rgamma_rational};
use crate::pochhammer::rising;
use crate::rational::Rational;
use crate::real::RealHP;
use crate::series::{eval_nonterminating_float, HypergeometricSpec, DEFAULT_MAX_TERMS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Watson,
    Saalschutz,
    Whipple,
    Dixon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    M,
    K,
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::M => "m",
            Var::K => "k",
            Var::Alpha => "alpha",
            Var::Beta => "beta",
            Var::Gamma => "gamma",
            Var::Delta => "delta",
        }
    }
}

macro_rules! theorems {
    ($($variant:ident => $key:literal, $tag:literal, $family:ident, $mode:ident, [$($var:ident),*];)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId {
            $($variant,)*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn key(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $key,)*
                }
            }

            /// Short tag of the entry, e.g. `2.8c`.
            pub fn tag(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $tag,)*
                }
            }

            pub fn family(self) -> Family {
                match self {
                    $(TheoremId::$variant => Family::$family,)*
                }
            }

            pub fn mode(self) -> Mode {
                match self {
                    $(TheoremId::$variant => Mode::$mode,)*
                }
            }

            pub fn free_vars(self) -> &'static [Var] {
                match self {
                    $(TheoremId::$variant => &[$(Var::$var),*],)*
                }
            }
        }
    };
}

theorems! {
    WatsonNt => "watson.nt", "2.1", Watson, Float, [Alpha, Beta, Gamma];
    WatsonTermEven => "watson.term-even", "2.2", Watson, Exact, [M, Beta, Gamma];
    WatsonTermOdd => "watson.term-odd", "2.3", Watson, Exact, [M, Beta, Gamma];
    WatsonTruncM => "watson.trunc-m", "2.4", Watson, Exact, [M, Alpha, Beta];
    WatsonTrunc2m => "watson.trunc-2m", "2.5", Watson, Exact, [M, K, Beta];
    WatsonTrunc2m1 => "watson.trunc-2m1", "2.6", Watson, Exact, [M, K, Beta];
    SaalschutzNt => "saalschutz.nt", "2.7", Saalschutz, Float, [Alpha, Beta, Gamma, Delta];
    SaalschutzTerm => "saalschutz.term", "2.8", Saalschutz, Exact, [M, Alpha, Beta, Gamma];
    SaalschutzTrunc => "saalschutz.trunc", "2.8c", Saalschutz, Exact, [M, K, Alpha, Beta];
    SaalschutzTermB => "saalschutz.term-b", "2.8a", Saalschutz, Exact, [M, Alpha, Beta, Gamma];
    SaalschutzTruncB => "saalschutz.trunc-b", "2.8b", Saalschutz, Exact, [M, K, Beta, Gamma];
    WhippleNt => "whipple.nt", "2.9", Whipple, Float, [Alpha, Beta, Gamma];
    WhippleTermEven => "whipple.term-even", "2.10", Whipple, Exact, [M, Beta, Gamma];
    WhippleTermOdd => "whipple.term-odd", "2.11", Whipple, Exact, [M, Beta, Gamma];
    WhippleTermB => "whipple.term-b", "2.13", Whipple, Exact, [M, Alpha, Gamma];
    WhippleTruncM => "whipple.trunc-m", "2.14a", Whipple, Exact, [M, K, Alpha];
    WhippleTrunc2mA => "whipple.trunc-2m-a", "2.15", Whipple, Exact, [M, K, Beta];
    WhippleTrunc2mB => "whipple.trunc-2m-b", "2.15a", Whipple, Exact, [M, K, Beta];
    WhippleTrunc2m1A => "whipple.trunc-2m1-a", "2.16", Whipple, Exact, [M, K, Beta];
    WhippleTrunc2m1B => "whipple.trunc-2m1-b", "2.16a", Whipple, Exact, [M, K, Beta];
    DixonNt => "dixon.nt", "2.18", Dixon, Float, [Alpha, Beta, Gamma];
    DixonNtReflect => "dixon.nt-reflect", "2.19", Dixon, Float, [Alpha, Beta, Gamma];
    DixonTermEven => "dixon.term-even", "2.20", Dixon, Exact, [M, Beta, Gamma];
    DixonTermOdd => "dixon.term-odd", "2.21", Dixon, Exact, [M, Beta, Gamma];
    DixonTruncA => "dixon.trunc-a", "2.22", Dixon, Exact, [M, K, Gamma];
    DixonTruncB => "dixon.trunc-b", "2.23", Dixon, Exact, [M, K];
    DixonTruncC => "dixon.trunc-c", "2.24", Dixon, Exact, [M, K, Gamma];
    DixonTruncD => "dixon.trunc-d", "2.25", Dixon, Exact, [M, K];
    DixonTermAlphaEven => "dixon.term-alpha-even", "2.20a", Dixon, Exact, [M, Alpha, Gamma];
    DixonTermAlphaOdd => "dixon.term-alpha-odd", "2.20b", Dixon, Exact, [M, Alpha, Gamma];
    DixonTruncE => "dixon.trunc-e", "2.20c", Dixon, Exact, [M, K, Alpha];
    DixonTruncF => "dixon.trunc-f", "2.20d", Dixon, Exact, [M, K, Alpha];
    DixonTermGamma => "dixon.term-gamma", "2.26", Dixon, Float, [M, Alpha, Beta];
    DixonTermM => "dixon.term-m", "2.27", Dixon, Exact, [M, Alpha, Gamma];
}

impl TheoremId {
    /// Theorems whose right-hand side is identically zero.
    pub fn is_zero_theorem(self) -> bool {
        use TheoremId::*;
        matches!(self, WatsonTermOdd | WatsonTrunc2m1 | DixonTermOdd | DixonTruncC | DixonTruncD)
    }

    pub fn uses(self, var: Var) -> bool {
        self.free_vars().contains(&var)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts a catalog key or a tag.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.key() == s || id.tag() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.key())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Bound values; unused variables are zero.
#[derive(Debug, Clone, Default)]
pub struct Values {
    pub m: i64,
    pub k: i64,
    pub a: Rational,
    pub b: Rational,
    pub g: Rational,
    pub d: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionKind {
    /// Not in {0, -1, -2, ...}.
    NotNonpositiveInteger,
    NotInteger,
    Positive,
}

#[derive(Debug, Clone)]
pub struct Condition {
    pub expr: &'static str,
    pub value: Rational,
    pub kind: ConditionKind,
}

impl Condition {
    pub fn holds(&self) -> bool {
        match self.kind {
            ConditionKind::NotNonpositiveInteger => !self.value.is_nonpositive_integer(),
            ConditionKind::NotInteger => !self.value.is_integer(),
            ConditionKind::Positive => self.value.is_positive(),
        }
    }

    pub fn describe(&self) -> String {
        match self.kind {
            ConditionKind::NotNonpositiveInteger => format!("{} ∉ ℤ₀⁻", self.expr),
            ConditionKind::NotInteger => format!("{} ∉ ℤ", self.expr),
            ConditionKind::Positive => format!("{} > 0", self.expr),
        }
    }
}

fn r(n: i64) -> Rational {
    Rational::from_int(n)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn nn(expr: &'static str, value: Rational) -> Condition {
    Condition { expr, value, kind: ConditionKind::NotNonpositiveInteger }
}

fn ni(expr: &'static str, value: Rational) -> Condition {
    Condition { expr, value, kind: ConditionKind::NotInteger }
}

fn pos(expr: &'static str, value: Rational) -> Condition {
    Condition { expr, value, kind: ConditionKind::Positive }
}

/// Side conditions of each entry, evaluated at the bound values.
pub fn conditions(id: TheoremId, v: &Values) -> Vec<Condition> {
    use TheoremId::*;
    let (m, k) = (v.m, v.k);
    let (a, b, g, d) = (&v.a, &v.b, &v.g, &v.d);
    match id {
        WatsonNt => vec![
            nn("(1+α+β)/2", (1 + a + b) / 2),
            nn("γ", g.clone()),
            nn("2γ", g * 2),
            pos("γ+(1-α-β)/2", g + (1 - a - b) / 2),
        ],
        WatsonTermEven => vec![nn("β", b.clone()), nn("γ", g.clone()), nn("2γ", g * 2), nn("(1+β)/2-m", (1 + b) / 2 - m)],
        WatsonTermOdd => vec![nn("β", b.clone()), nn("γ", g.clone()), nn("2γ", g * 2), nn("(β-2m)/2", (b - 2 * m) / 2)],
        WatsonTruncM => vec![nn("α", a.clone()), nn("β", b.clone()), nn("(1+α+β)/2", (1 + a + b) / 2)],
        WatsonTrunc2m => vec![nn("β", b.clone()), nn("(1+β)/2-m", (1 + b) / 2 - m)],
        WatsonTrunc2m1 => vec![nn("β", b.clone()), nn("β/2-m", b / 2 - m)],
        SaalschutzNt => vec![pos("δ-α-β", d - a - b), pos("γ-α-β", g - a - b)],
        SaalschutzTerm => vec![
            nn("α", a.clone()),
            nn("β", b.clone()),
            nn("γ", g.clone()),
            nn("1+α+β-γ-m", 1 + a + b - g - m),
        ],
        SaalschutzTrunc => vec![nn("α", a.clone()), nn("β", b.clone()), nn("1+α+β+k", 1 + a + b + k)],
        SaalschutzTermB => vec![
            nn("α+m", a + m),
            nn("1+α-β-γ", 1 + a - b - g),
            nn("1+α-β", 1 + a - b),
            nn("1+α-γ", 1 + a - g),
        ],
        SaalschutzTruncB => vec![
            nn("β-k-1", b - k - 1),
            nn("-m-k-γ", -(g + m + k)),
            nn("β-γ-m-k", b - g - m - k),
        ],
        WhippleNt => vec![pos("β", b.clone()), nn("γ", g.clone()), nn("2β-γ+1", 2 * b - g + 1)],
        WhippleTermEven | WhippleTermOdd => {
            vec![nn("β", b.clone()), nn("γ", g.clone()), nn("1+2β-γ", 1 + 2 * b - g)]
        }
        WhippleTermB => vec![
            nn("α", a.clone()),
            nn("1-α", 1 - a),
            nn("γ", g.clone()),
            nn("1-γ-2m", 1 - g - 2 * m),
            nn("(α+γ+2m)/2", (a + g + 2 * m) / 2),
            nn("(1-α+γ+2m)/2", (1 - a + g + 2 * m) / 2),
        ],
        WhippleTruncM => vec![nn("α", a.clone()), nn("1-α", 1 - a)],
        WhippleTrunc2mA => vec![nn("β", b.clone()), nn("2β+2m+2k+1", 2 * b + 2 * m + 2 * k + 1)],
        WhippleTrunc2mB | WhippleTrunc2m1A => {
            vec![nn("β", b.clone()), nn("2β+2m+2k+2", 2 * b + 2 * m + 2 * k + 2)]
        }
        WhippleTrunc2m1B => vec![nn("β", b.clone()), nn("2β+2m+2k+3", 2 * b + 2 * m + 2 * k + 3)],
        DixonNt | DixonNtReflect => vec![
            pos("2+α-2β-2γ", 2 + a - 2 * b - 2 * g),
            nn("1+α-β", 1 + a - b),
            nn("1+α-γ", 1 + a - g),
            nn("1+α/2", 1 + a / 2),
            nn("1+α/2-β-γ", 1 + a / 2 - b - g),
        ],
        DixonTermEven | DixonTermOdd => vec![ni("β", b.clone()), ni("γ", g.clone())],
        DixonTruncA => vec![nn("γ", g.clone()), nn("1-2m-γ", 1 - g - 2 * m)],
        DixonTruncC => vec![nn("γ", g.clone()), nn("-2m-γ", -(g + 2 * m))],
        DixonTruncB | DixonTruncD => vec![],
        DixonTermAlphaEven | DixonTermAlphaOdd => vec![ni("α", a.clone()), ni("γ", g.clone())],
        DixonTruncE => vec![
            nn("α", a.clone()),
            nn("1+α+2m+k", 1 + a + 2 * m + k),
            nn("1+α+2m", 1 + a + 2 * m),
        ],
        DixonTruncF => vec![
            nn("α", a.clone()),
            nn("2+α+2m+k", 2 + a + 2 * m + k),
            nn("2+α+2m", 2 + a + 2 * m),
        ],
        DixonTermGamma => vec![
            nn("α", a.clone()),
            nn("β", b.clone()),
            nn("1+α-β", 1 + a - b),
            nn("1+α+m", 1 + a + m),
        ],
        DixonTermM => vec![
            nn("α", a.clone()),
            nn("γ", g.clone()),
            nn("1+α+m", 1 + a + m),
            nn("1+α-γ", 1 + a - g),
        ],
    }
}

/// Convergence parameter ω of the left-hand series at `z = 1`, for the
/// non-terminating entries. The Saalschütz entry reports the smaller of the
/// two series' values.
pub fn float_omega(id: TheoremId, v: &Values) -> Option<Rational> {
    use TheoremId::*;
    let (a, b, g, d) = (&v.a, &v.b, &v.g, &v.d);
    match id {
        WatsonNt => Some(g + (1 - a - b) / 2),
        SaalschutzNt => Some((d - a - b).min(Rational::one())),
        WhippleNt => Some(b.clone()),
        DixonNt | DixonNtReflect => Some(2 + a - 2 * b - 2 * g),
        _ => None,
    }
}

fn spec(num: Vec<Rational>, den: Vec<Rational>) -> HypergeometricSpec {
    HypergeometricSpec::new(num, den, Rational::one())
}

/// The left-hand `3F2` at unit argument.
pub fn lhs_spec(id: TheoremId, v: &Values) -> HypergeometricSpec {
    use TheoremId::*;
    let (m, k) = (v.m, v.k);
    let (a, b, g, d) = (&v.a, &v.b, &v.g, &v.d);
    let tm = v.m.max(0) as u64;
    match id {
        WatsonNt => spec(vec![a.clone(), b.clone(), g.clone()], vec![(1 + a + b) / 2, g * 2]),
        WatsonTermEven => spec(vec![r(-2 * m), b.clone(), g.clone()], vec![(1 - r(2 * m) + b) / 2, g * 2]),
        WatsonTermOdd => spec(vec![r(-2 * m - 1), b.clone(), g.clone()], vec![(b - 2 * m) / 2, g * 2]),
        WatsonTruncM => spec(vec![r(-m), a.clone(), b.clone()], vec![r(-2 * m), (1 + a + b) / 2]).truncated(tm),
        WatsonTrunc2m => spec(
            vec![r(-2 * m), b.clone(), -(r(m + k) + half())],
            vec![r(-2 * m - 2 * k - 1), (1 + b) / 2 - m],
        )
        .truncated(2 * tm),
        WatsonTrunc2m1 => spec(
            vec![r(-2 * m - 1), b.clone(), -(r(m + k) + half())],
            vec![r(-2 * m - 2 * k - 1), b / 2 - m],
        )
        .truncated(2 * tm + 1),
        SaalschutzNt => spec(vec![a.clone(), b.clone(), g + d - a - b - 1], vec![g.clone(), d.clone()]),
        SaalschutzTerm => spec(vec![a.clone(), b.clone(), r(-m)], vec![g.clone(), 1 + a + b - g - m]),
        SaalschutzTrunc => spec(vec![r(-m), a.clone(), b.clone()], vec![r(-m - k), 1 + a + b + k]).truncated(tm),
        SaalschutzTermB => spec(vec![r(-m), a + m, 1 + a - b - g], vec![1 + a - b, 1 + a - g]),
        SaalschutzTruncB => {
            spec(vec![r(-m), b - k - 1, -(g + m + k)], vec![r(-m - k), b - g - m - k]).truncated(tm)
        }
        WhippleNt => spec(vec![a.clone(), 1 - a, b.clone()], vec![g.clone(), 2 * b - g + 1]),
        WhippleTermEven => spec(vec![r(-2 * m), r(1 + 2 * m), b.clone()], vec![g.clone(), 1 + 2 * b - g]),
        WhippleTermOdd => spec(vec![r(-2 * m - 1), r(2 + 2 * m), b.clone()], vec![g.clone(), 1 + 2 * b - g]),
        WhippleTermB => spec(vec![r(-m), a.clone(), 1 - a], vec![g.clone(), 1 - g - 2 * m]),
        WhippleTruncM => spec(vec![r(-m), a.clone(), 1 - a], vec![r(-2 * m - k), r(1 + k)]).truncated(tm),
        WhippleTrunc2mA => spec(
            vec![r(-2 * m), r(1 + 2 * m), b.clone()],
            vec![r(-2 * m - 2 * k), 2 * b + (2 * m + 2 * k + 1)],
        )
        .truncated(2 * tm),
        WhippleTrunc2mB => spec(
            vec![r(-2 * m), r(1 + 2 * m), b.clone()],
            vec![r(-2 * m - 2 * k - 1), 2 * b + (2 + 2 * m + 2 * k)],
        )
        .truncated(2 * tm),
        WhippleTrunc2m1A => spec(
            vec![r(-2 * m - 1), r(2 + 2 * m), b.clone()],
            vec![r(-2 * m - 2 * k - 1), 2 * b + (2 * m + 2 * k + 2)],
        )
        .truncated(2 * tm + 1),
        WhippleTrunc2m1B => spec(
            vec![r(-2 * m - 1), r(2 + 2 * m), b.clone()],
            vec![r(-2 * m - 2 * k - 2), 2 * b + (2 * m + 2 * k + 3)],
        )
        .truncated(2 * tm + 1),
        DixonNt | DixonNtReflect => spec(vec![a.clone(), b.clone(), g.clone()], vec![1 + a - b, 1 + a - g]),
        DixonTermEven => spec(vec![r(-2 * m), b.clone(), g.clone()], vec![1 - b - 2 * m, 1 - g - 2 * m]),
        DixonTermOdd => spec(vec![r(-2 * m - 1), b.clone(), g.clone()], vec![-(b + 2 * m), -(g + 2 * m)]),
        DixonTruncA => {
            spec(vec![r(-2 * m), r(1 + k), g.clone()], vec![r(-2 * m - k), 1 - g - 2 * m]).truncated(2 * tm)
        }
        DixonTruncB => spec(vec![r(-2 * m), r(1 + k), r(1 + k)], vec![r(-2 * m - k), r(-2 * m - k)]).truncated(2 * tm),
        DixonTruncC => spec(vec![r(-2 * m - 1), r(1 + k), g.clone()], vec![r(-2 * m - 1 - k), -(g + 2 * m)])
            .truncated(2 * tm + 1),
        DixonTruncD => spec(vec![r(-2 * m - 1), r(1 + k), r(1 + k)], vec![r(-2 * m - 1 - k), r(-2 * m - 1 - k)])
            .truncated(2 * tm + 1),
        DixonTermAlphaEven => spec(vec![r(-2 * m), a.clone(), g.clone()], vec![1 + a + 2 * m, 1 + a - g]),
        DixonTermAlphaOdd => spec(vec![r(-2 * m - 1), a.clone(), g.clone()], vec![2 + a + 2 * m, 1 + a - g]),
        DixonTruncE => spec(vec![r(-2 * m), a.clone(), 1 + a + (2 * m + k)], vec![r(-2 * m - k), 1 + a + 2 * m])
            .truncated(2 * tm),
        DixonTruncF => spec(vec![r(-2 * m - 1), a.clone(), 2 + a + (2 * m + k)], vec![r(-2 * m - k - 1), 2 + a + 2 * m])
            .truncated(2 * tm + 1),
        DixonTermGamma => spec(vec![a.clone(), b.clone(), r(-m)], vec![1 + a - b, 1 + a + m]),
        DixonTermM => spec(vec![r(-m), a.clone(), g.clone()], vec![1 + a + m, 1 + a - g]),
    }
}

fn p(x: Rational, n: i64) -> Rational {
    rising(&x, n.max(0) as u64)
}

fn ratio(id: TheoremId, num: Vec<Rational>, den: Vec<Rational>) -> Result<Rational> {
    let top: Rational = num.into_iter().product();
    let bottom: Rational = den.into_iter().product();
    top.checked_div(&bottom)
        .ok_or_else(|| Error::PoleInClosedForm(format!("{}: a denominator factor vanishes", id.key())))
}

/// Exact right-hand side of a Pochhammer-form entry.
pub fn rhs_exact(id: TheoremId, v: &Values) -> Result<Rational> {
    use TheoremId::*;
    let (m, k) = (v.m, v.k);
    let (a, b, g) = (&v.a, &v.b, &v.g);
    let h = half();
    let four_m = r(4).pow(m as i32).expect("power");
    match id {
        WatsonTermEven => ratio(
            id,
            vec![p(h.clone(), m), p(g + (1 - b) / 2, m)],
            vec![p(g + &h, m), p((1 - b) / 2, m)],
        ),
        WatsonTruncM => ratio(
            id,
            vec![p((1 + a) / 2, m), p((1 + b) / 2, m)],
            vec![p(h, m), p((1 + a + b) / 2, m)],
        ),
        WatsonTrunc2m => ratio(
            id,
            vec![p(h, m), p((2 + b + 2 * k) / 2, m)],
            vec![p((1 - b) / 2, m), p(r(1 + k), m)],
        ),
        WatsonTermOdd | WatsonTrunc2m1 | DixonTermOdd | DixonTruncC | DixonTruncD => Ok(Rational::zero()),
        SaalschutzTerm => ratio(id, vec![p(g - a, m), p(g - b, m)], vec![p(g.clone(), m), p(g - a - b, m)]),
        SaalschutzTrunc => ratio(
            id,
            vec![p(1 + a + k, m), p(1 + b + k, m)],
            vec![p(r(1 + k), m), p(1 + a + b + k, m)],
        ),
        SaalschutzTermB => ratio(
            id,
            vec![p(b.clone(), m), p(g.clone(), m)],
            vec![p(1 + a - b, m), p(1 + a - g, m)],
        ),
        SaalschutzTruncB => ratio(
            id,
            vec![p(b.clone(), m), p(g.clone(), m)],
            vec![p(r(1 + k), m), p(1 + g - b + k, m)],
        ),
        WhippleTermEven => ratio(
            id,
            vec![p((2 - g) / 2, m), p((1 - 2 * b + g) / 2, m)],
            vec![p((1 + g) / 2, m), p((2 + 2 * b - g) / 2, m)],
        ),
        WhippleTermOdd => ratio(
            id,
            vec![g - 1, 2 * b - g, p((3 - g) / 2, m), p((2 - 2 * b + g) / 2, m)],
            vec![g.clone(), 1 + 2 * b - g, p((2 + g) / 2, m), p((3 + 2 * b - g) / 2, m)],
        ),
        WhippleTermB => ratio(
            id,
            vec![p((g + a) / 2, m), p((g - a + 1) / 2, m)],
            vec![p(g / 2, m), p((g + 1) / 2, m)],
        ),
        WhippleTruncM => ratio(
            id,
            vec![p((2 - a + k) / 2, m), p((1 + a + k) / 2, m)],
            vec![p(Rational::new(2 + k, 2), m), p(Rational::new(1 + k, 2), m)],
        ),
        WhippleTrunc2mA => ratio(
            id,
            vec![p(1 + 2 * b + 2 * k, 2 * m), p(r(1 + k), 2 * m)],
            vec![p(r(1 + 2 * k), 2 * m), p(1 + b + k, 2 * m)],
        ),
        WhippleTrunc2mB => ratio(
            id,
            vec![p(2 + 2 * b + 2 * k, 2 * m), p(Rational::new(3 + 2 * k, 2), 2 * m)],
            vec![p(r(2 + 2 * k), 2 * m), p((3 + 2 * b + 2 * k) / 2, 2 * m)],
        ),
        WhippleTrunc2m1A => ratio(
            id,
            vec![r(k + 1), 2 * b + (2 * m + 2 * k + 1), p(2 * b + 2 * k + 1, 2 * m), p(r(2 + k), 2 * m)],
            vec![r(2 * m + 2 * k + 1), b + (k + 1), p(r(2 * k + 1), 2 * m), p(2 + b + k, 2 * m)],
        ),
        WhippleTrunc2m1B => ratio(
            id,
            vec![
                r(2 * k + 3),
                b + (m + k + 1),
                p(2 * b + 2 * k + 2, 2 * m),
                p(Rational::new(5 + 2 * k, 2), 2 * m),
            ],
            vec![r(m + k + 1), 2 * b + (2 * k + 3), p(r(2 * k + 2), 2 * m), p((5 + 2 * b + 2 * k) / 2, 2 * m)],
        ),
        DixonTermEven => ratio(
            id,
            vec![p(b.clone(), m), p(g.clone(), m), four_m, p(h, m), p(b + g, 2 * m)],
            vec![p(b.clone(), 2 * m), p(g.clone(), 2 * m), p(b + g, m)],
        ),
        DixonTruncA => ratio(
            id,
            vec![p(r(1 + k), m), p(g.clone(), m), four_m, p(h, m), p(1 + g + k, 2 * m)],
            vec![p(r(1 + k), 2 * m), p(g.clone(), 2 * m), p(1 + g + k, m)],
        ),
        DixonTruncB => ratio(
            id,
            vec![p(r(1 + k), m), p(r(1 + k), m), four_m, p(h, m), p(r(2 + 2 * k), 2 * m)],
            vec![p(r(1 + k), 2 * m), p(r(1 + k), 2 * m), p(r(2 + 2 * k), m)],
        ),
        DixonTermAlphaEven => ratio(
            id,
            vec![p(1 + a, 2 * m), p(1 + a / 2 - g, 2 * m)],
            vec![p(1 + a / 2, 2 * m), p(1 + a - g, 2 * m)],
        ),
        DixonTermAlphaOdd => ratio(
            id,
            vec![1 + a, 2 + a - 2 * g, p(2 + a, 2 * m), p(2 + a / 2 - g, 2 * m)],
            vec![2 + a, 1 + a - g, p(2 + a / 2, 2 * m), p(2 + a - g, 2 * m)],
        ),
        DixonTruncE => ratio(
            id,
            vec![p(1 + a, 2 * m), p(1 + a / 2 + k, 2 * m)],
            vec![p(1 + a / 2, 2 * m), p(r(1 + k), 2 * m)],
        ),
        DixonTruncF => ratio(
            id,
            vec![1 + a, 2 + a + (2 * k + 4 * m), p(2 + a, 2 * m), p(1 + a / 2 + k, 2 * m)],
            vec![2 + a, r(1 + 2 * m + k), p(2 + a / 2, 2 * m), p(r(1 + k), 2 * m)],
        ),
        DixonTermM => ratio(
            id,
            vec![p(1 + a, m), p(1 + a / 2 - g, m)],
            vec![p(1 + a / 2, m), p(1 + a - g, m)],
        ),
        WatsonNt | SaalschutzNt | WhippleNt | DixonNt | DixonNtReflect | DixonTermGamma => {
            Err(Error::Domain(format!("{} has a Gamma-form right-hand side", id.key())))
        }
    }
}

/// `Π Γ(num) / Π Γ(den)`; a pole in the numerator is an error, one in the
/// denominator contributes a zero factor.
pub fn gamma_ratio(num: &[Rational], den: &[Rational]) -> Result<RealHP> {
    let mut acc = RealHP::ONE;
    for x in num {
        acc *= gamma_rational(x).map_err(|e| match e {
            Error::PoleAtNonpositiveInteger(n) => Error::PoleInClosedForm(format!("Γ({n}) in a numerator")),
            other => other,
        })?;
    }
    for x in den {
        acc *= rgamma_rational(x)?;
    }
    if acc.is_nan() || !acc.is_finite() {
        return Err(Error::Overflow(acc.to_f64()));
    }
    Ok(acc)
}

fn cos_half_pi(a: &Rational) -> RealHP {
    if a.is_integer() && !(a / 2).is_integer() {
        return RealHP::ZERO;
    }
    RealHP::from_rational(&(a / 2)).cos_pi()
}

fn sin_pi(x: &Rational) -> RealHP {
    if x.is_integer() {
        RealHP::ZERO
    } else {
        RealHP::from_rational(x).sin_pi()
    }
}

/// The two Dixon closed forms that avoid `Γ(1+α/2)`; the second also needs
/// non-vanishing sine factors.
pub fn dixon_reflected(a: &Rational, b: &Rational, g: &Rational) -> Result<(RealHP, Option<RealHP>)> {
    let c = cos_half_pi(a);
    let first = c * gamma_ratio(
        &[1 - a, 1 + a - b, 1 + a - g, 1 + a / 2 - b - g],
        &[1 - a / 2, 1 + a / 2 - b, 1 + a / 2 - g, 1 + a - b - g],
    )?;
    let second = (|| {
        let sines_den = [b - a, g - a, b + g - a / 2];
        if sines_den.iter().any(|x| x.is_integer()) {
            return None;
        }
        let gam = gamma_ratio(
            &[b - a / 2, g - a / 2, 1 - a, b + g - a],
            &[b - a, g - a, 1 - a / 2, b + g - a / 2],
        )
        .ok()?;
        let s_num = sin_pi(&(b - a / 2)) * sin_pi(&(g - a / 2)) * sin_pi(&(b + g - a));
        let s_den = sines_den.iter().fold(RealHP::ONE, |acc, x| acc * sin_pi(x));
        Some(c * gam * s_num / s_den)
    })();
    Ok((first, second))
}

pub fn dixon_plain(a: &Rational, b: &Rational, g: &Rational) -> Result<RealHP> {
    gamma_ratio(
        &[1 + a / 2, 1 + a - b, 1 + a - g, 1 + a / 2 - b - g],
        &[1 + a, 1 + a / 2 - b, 1 + a / 2 - g, 1 + a - b - g],
    )
}

/// Float right-hand side. Also returns an alternative closed form where the
/// entry has one (the second reflected Dixon form).
pub fn rhs_float(id: TheoremId, v: &Values, rel_tol: f64) -> Result<(RealHP, Option<RealHP>)> {
    use TheoremId::*;
    let (m, a, b, g, d) = (v.m, &v.a, &v.b, &v.g, &v.d);
    match id {
        WatsonNt => Ok((
            gamma_ratio(
                &[half(), g + half(), (1 + a + b) / 2, g + (1 - a - b) / 2],
                &[(1 + a) / 2, (1 + b) / 2, g + (1 - a) / 2, g + (1 - b) / 2],
            )?,
            None,
        )),
        SaalschutzNt => {
            let first = gamma_ratio(
                &[g.clone(), d.clone(), g - a - b, d - a - b],
                &[g - a, g - b, d - a, d - b],
            )?;
            let lead = a + b - g;
            let pre = gamma_ratio(&[g.clone(), d.clone()], &[a.clone(), b.clone(), g + d - a - b])?
                / RealHP::from_rational(&lead);
            if pre.is_zero() {
                return Ok((first, None));
            }
            let inner = HypergeometricSpec::new(
                vec![g - a, g - b, Rational::one()],
                vec![g - a - b + 1, g + d - a - b],
                Rational::one(),
            );
            let s = eval_nonterminating_float(&inner, rel_tol, DEFAULT_MAX_TERMS)?;
            Ok((first + pre * s.value, None))
        }
        WhippleNt => {
            let two_pow = (RealHP::LN_2 * RealHP::from_rational(&(2 * b - 1))).exp();
            let gam = gamma_ratio(
                &[g.clone(), 2 * b - g + 1],
                &[(a + 2 * b - g + 1) / 2, (a + g) / 2, (2 - a + 2 * b - g) / 2, (1 - a + g) / 2],
            )?;
            Ok((RealHP::PI * gam / two_pow, None))
        }
        DixonNt => Ok((dixon_plain(a, b, g)?, None)),
        DixonNtReflect => dixon_reflected(a, b, g),
        DixonTermGamma => {
            let c = cos_half_pi(a);
            let gam = gamma_ratio(
                &[1 - a, 1 + a - b, 1 + a + m, 1 + a / 2 - b + m],
                &[1 - a / 2, 1 + a / 2 - b, 1 + a / 2 + m, 1 + a - b + m],
            )?;
            Ok((c * gam, None))
        }
        _ => Ok((RealHP::from_rational(&rhs_exact(id, v)?), None)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn table_is_consistent() {
        assert_eq!(TheoremId::ALL.len(), 34);
        let exact = TheoremId::ALL.iter().filter(|id| id.mode() == Mode::Exact).count();
        assert_eq!(exact, 28);
        for id in TheoremId::ALL {
            assert_eq!(id.key().parse::<TheoremId>().unwrap(), *id);
            assert_eq!(id.tag().parse::<TheoremId>().unwrap(), *id);
        }
        assert!("watson.bogus".parse::<TheoremId>().is_err());
    }

    #[test]
    fn closed_form_examples() {
        let v = Values { m: 1, k: 1, a: q(1, 1), b: q(1, 1), ..Default::default() };
        assert_eq!(rhs_exact(TheoremId::SaalschutzTrunc, &v).unwrap(), q(9, 8));
        assert_eq!(rhs_exact(TheoremId::WatsonTruncM, &v).unwrap(), q(4, 3));
        assert_eq!(rhs_exact(TheoremId::DixonTruncB, &v).unwrap(), q(10, 9));
        let v = Values { m: 1, k: 1, a: q(1, 2), ..Default::default() };
        assert_eq!(rhs_exact(TheoremId::WhippleTruncM, &v).unwrap(), q(25, 24));
    }

    #[test]
    fn lhs_layouts() {
        let v = Values { m: 1, k: 1, b: q(1, 3), ..Default::default() };
        let s = lhs_spec(TheoremId::WatsonTrunc2m, &v);
        assert_eq!(s.to_string(), "3F2[-2, 1/3, -5/2; -5, -1/3; 1]_2");
        let v = Values { m: 1, a: q(1, 1), b: q(1, 1), ..Default::default() };
        assert_eq!(lhs_spec(TheoremId::WatsonTruncM, &v).to_string(), "3F2[-1, 1, 1; -2, 3/2; 1]_1");
    }

    #[test]
    fn dixon_forms_agree() {
        let (a, b, g) = (q(3, 10), q(-7, 20), q(1, 5));
        let plain = dixon_plain(&a, &b, &g).unwrap();
        let (first, second) = dixon_reflected(&a, &b, &g).unwrap();
        assert!(((plain - first) / plain).abs().to_f64() < 1e-25);
        let second = second.unwrap();
        assert!(((plain - second) / plain).abs().to_f64() < 1e-25);
    }
}
