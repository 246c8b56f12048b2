//! Closed-form parameter values for named families, the bound right-hand sides,
//! and generators for every extremal family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::tree::Tree;

/// A named graph family with its parameters.
///
/// Compact text form: `kind:key=value,...`, e.g. `path:n=7`, `star:m=5`,
/// `starlike:m=3,l=2`, `multipartite:parts=2-3-3`, `complete:n=6`,
/// `p2ab:l=2,a=2,b=2,x=3` (the prefix `plab` is accepted as well).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Complete {
        n: usize,
    },
    Path {
        n: usize,
    },
    /// Part sizes ascending, at least two parts.
    Multipartite {
        parts: Vec<usize>,
    },
    /// `K_{1,m}`.
    Star {
        m: usize,
    },
    /// `m` legs of length `l` on one hub.
    Starlike {
        m: usize,
        l: usize,
    },
    /// `P_l(a,b;x)`: a path on `l` vertices with `a` pendant paths of length `x`
    /// on its first vertex and `b` on its last.
    PLAbx {
        l: usize,
        a: usize,
        b: usize,
        x: usize,
    },
}

/// Generated family member.
#[derive(Debug, Clone)]
pub enum Generated {
    Tree(Tree),
    Graph(Graph),
}

impl Generated {
    pub fn to_graph(&self) -> Graph {
        match self {
            Generated::Tree(t) => Graph::from(t),
            Generated::Graph(g) => g.clone(),
        }
    }
}

impl FamilySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Multipartite { .. } => "multipartite",
            FamilySpec::Star { .. } => "star",
            FamilySpec::Starlike { .. } => "starlike",
            FamilySpec::PLAbx { .. } => "p_l_abx",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Complete { n } | FamilySpec::Path { n } => *n,
            FamilySpec::Multipartite { parts } => parts.iter().sum(),
            FamilySpec::Star { m } => m + 1,
            FamilySpec::Starlike { m, l } => 1 + m * l,
            FamilySpec::PLAbx { l, a, b, x } => l + (a + b) * x,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(Error::BadSpec(format!("{name} must be at least 1")))
            } else {
                Ok(())
            }
        };
        match self {
            FamilySpec::Complete { n } | FamilySpec::Path { n } => positive("n", *n),
            FamilySpec::Multipartite { parts } => {
                if parts.len() < 2 {
                    return Err(Error::BadSpec("a multipartite graph needs at least two parts".into()));
                }
                if parts.windows(2).any(|w| w[0] > w[1]) {
                    return Err(Error::BadSpec("part sizes must be ascending".into()));
                }
                parts.iter().try_for_each(|&p| positive("part size", p))
            }
            FamilySpec::Star { m } => positive("m", *m),
            FamilySpec::Starlike { m, l } => {
                positive("m", *m)?;
                positive("l", *l)
            }
            FamilySpec::PLAbx { l, a, b, x } => {
                positive("l", *l)?;
                positive("a", *a)?;
                positive("b", *b)?;
                positive("x", *x)
            }
        }
    }

    /// Deterministic labeling: spine first, then pendant paths labeled outward.
    pub fn generate(&self) -> Result<Generated> {
        self.validate()?;
        match self {
            FamilySpec::Complete { n } => {
                let edges: Vec<_> = (0..*n).flat_map(|u| (u + 1..*n).map(move |v| (u, v))).collect();
                Ok(Generated::Graph(Graph::from_edges(*n, &edges)?))
            }
            FamilySpec::Multipartite { parts } => {
                let mut part_of = Vec::new();
                for (i, &p) in parts.iter().enumerate() {
                    part_of.extend(std::iter::repeat_n(i, p));
                }
                let n = part_of.len();
                let edges: Vec<_> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| part_of[u] != part_of[v])
                    .collect();
                Ok(Generated::Graph(Graph::from_edges(n, &edges)?))
            }
            FamilySpec::Path { n } => {
                let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                Ok(Generated::Tree(Tree::from_edges(*n, &edges)?))
            }
            FamilySpec::Star { m } => {
                let edges: Vec<_> = (1..=*m).map(|i| (0, i)).collect();
                Ok(Generated::Tree(Tree::from_edges(m + 1, &edges)?))
            }
            FamilySpec::Starlike { m, l } => {
                let mut b = PendantBuilder::new(1, Vec::new());
                for _ in 0..*m {
                    b.attach(0, *l);
                }
                Ok(Generated::Tree(b.finish()?))
            }
            FamilySpec::PLAbx { l, a, b, x } => {
                let spine: Vec<_> = (1..*l).map(|i| (i - 1, i)).collect();
                let mut builder = PendantBuilder::new(*l, spine);
                for _ in 0..*a {
                    builder.attach(0, *x);
                }
                for _ in 0..*b {
                    builder.attach(l - 1, *x);
                }
                Ok(Generated::Tree(builder.finish()?))
            }
        }
    }

    pub fn generate_tree(&self) -> Result<Tree> {
        match self.generate()? {
            Generated::Tree(t) => Ok(t),
            Generated::Graph(_) => Err(Error::BadSpec(format!("`{self}` is not a tree family"))),
        }
    }
}

struct PendantBuilder {
    next: usize,
    edges: Vec<(usize, usize)>,
}

impl PendantBuilder {
    fn new(next: usize, edges: Vec<(usize, usize)>) -> Self {
        PendantBuilder { next, edges }
    }

    fn attach(&mut self, anchor: usize, len: usize) {
        let mut prev = anchor;
        for _ in 0..len {
            self.edges.push((prev, self.next));
            prev = self.next;
            self.next += 1;
        }
    }

    fn finish(self) -> Result<Tree> {
        Tree::from_edges(self.next, &self.edges)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete { n } => write!(f, "complete:n={n}"),
            FamilySpec::Path { n } => write!(f, "path:n={n}"),
            FamilySpec::Multipartite { parts } => {
                let joined: Vec<String> = parts.iter().map(usize::to_string).collect();
                write!(f, "multipartite:parts={}", joined.join("-"))
            }
            FamilySpec::Star { m } => write!(f, "star:m={m}"),
            FamilySpec::Starlike { m, l } => write!(f, "starlike:m={m},l={l}"),
            FamilySpec::PLAbx { l, a, b, x } => write!(f, "p{l}ab:l={l},a={a},b={b},x={x}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::BadSpec(format!("`{s}`: expected kind:key=value,...")))?;
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for item in args.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::BadSpec(format!("`{item}`: expected key=value")))?;
            if pairs.iter().any(|(seen, _)| *seen == k.trim()) {
                return Err(Error::BadSpec(format!("duplicate key `{}`", k.trim())));
            }
            pairs.push((k.trim(), v.trim()));
        }
        let mut take = |key: &str| -> Result<Option<&str>> {
            Ok(pairs.iter().position(|(k, _)| *k == key).map(|i| pairs.remove(i).1))
        };
        let num = |key: &str, raw: Option<&str>| -> Result<usize> {
            let raw = raw.ok_or_else(|| Error::BadSpec(format!("missing `{key}`")))?;
            raw.parse().map_err(|_| Error::BadSpec(format!("`{key}={raw}` is not a non-negative integer")))
        };

        let kind = kind.trim();
        let spec = match kind {
            "complete" => FamilySpec::Complete { n: num("n", take("n")?)? },
            "path" => FamilySpec::Path { n: num("n", take("n")?)? },
            "star" => FamilySpec::Star { m: num("m", take("m")?)? },
            "starlike" => FamilySpec::Starlike { m: num("m", take("m")?)?, l: num("l", take("l")?)? },
            "multipartite" => {
                let raw = take("parts")?.ok_or_else(|| Error::BadSpec("missing `parts`".into()))?;
                let mut parts = raw.split('-').map(|p| num("parts", Some(p))).collect::<Result<Vec<_>>>()?;
                parts.sort_unstable();
                FamilySpec::Multipartite { parts }
            }
            _ if kind.starts_with('p') && kind.ends_with("ab") && kind.len() > 3 => {
                let middle = &kind[1..kind.len() - 2];
                let given_l = take("l")?;
                let l = if middle == "l" {
                    num("l", given_l)?
                } else {
                    let from_name = num("l", Some(middle))?;
                    if let Some(raw) = given_l {
                        if num("l", Some(raw))? != from_name {
                            return Err(Error::BadSpec(format!("`{kind}` conflicts with l={raw}")));
                        }
                    }
                    from_name
                };
                FamilySpec::PLAbx {
                    l,
                    a: num("a", take("a")?)?,
                    b: num("b", take("b")?)?,
                    x: num("x", take("x")?)?,
                }
            }
            other => return Err(Error::BadSpec(format!("unknown family kind `{other}`"))),
        };
        if let Some((k, _)) = pairs.first() {
            return Err(Error::BadSpec(format!("unexpected key `{k}` for `{kind}`")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn check_k(spec: &FamilySpec, k: usize) -> Result<usize> {
    let n = spec.order();
    if k < 2 || k > n {
        return Err(Error::bad_k(format!("k = {k} outside 2..={n}")));
    }
    Ok(n)
}

/// Steiner k-diameter of complete, path and complete multipartite graphs.
pub fn sd_k_formula(spec: &FamilySpec, k: usize) -> Result<usize> {
    spec.validate()?;
    let n = check_k(spec, k)?;
    match spec {
        FamilySpec::Complete { .. } => Ok(k - 1),
        FamilySpec::Path { .. } => Ok(n - 1),
        FamilySpec::Multipartite { parts } => {
            let largest = *parts.last().expect("validated");
            Ok(if largest >= k { k } else { k - 1 })
        }
        other => Err(Error::UnsupportedKind(other.kind().into())),
    }
}

/// Steiner (k,k')-radius of complete, path and complete multipartite graphs.
pub fn sr_kk_formula(spec: &FamilySpec, k: usize, kprime: usize) -> Result<usize> {
    spec.validate()?;
    let n = check_k(spec, k)?;
    if kprime < 1 || kprime > k {
        return Err(Error::bad_k(format!("k' = {kprime} outside 1..={k}")));
    }
    match spec {
        FamilySpec::Complete { .. } => Ok(k - 1),
        FamilySpec::Path { .. } => Ok(match k - kprime {
            0 => k - 1,
            1 => (n + kprime - 2).div_ceil(2),
            _ => n - 1,
        }),
        FamilySpec::Multipartite { parts } => {
            if kprime >= 2 {
                return Ok(k - 1);
            }
            let smallest = parts[0];
            Ok(if smallest >= k { k } else { k - 1 })
        }
        other => Err(Error::UnsupportedKind(other.kind().into())),
    }
}

/// Right-hand sides of the diameter-versus-radius bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    /// `k/(k-k') · r`
    Thm34,
    /// `k/(k-2) · r - 2/(k-2)`
    ThmK2,
    /// `k/(k-3) · r - 6/(k-3)`
    ThmK3,
    /// `k/(k-k') · r - k'(k'-1)/(k-k')`
    Conjecture,
    /// `k/(k-1) · r`
    TreeK1,
    /// `2(k+1)/(2k-1) · r`
    GeneralHos,
    /// `(k+3)/(k+1) · r`
    GeneralReiswig,
}

impl BoundName {
    pub const ALL: [BoundName; 7] = [
        BoundName::Thm34,
        BoundName::ThmK2,
        BoundName::ThmK3,
        BoundName::Conjecture,
        BoundName::TreeK1,
        BoundName::GeneralHos,
        BoundName::GeneralReiswig,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundName::Thm34 => "thm34",
            BoundName::ThmK2 => "thm_k2",
            BoundName::ThmK3 => "thm_k3",
            BoundName::Conjecture => "conjecture",
            BoundName::TreeK1 => "tree_k1",
            BoundName::GeneralHos => "general_hos",
            BoundName::GeneralReiswig => "general_reiswig",
        }
    }
}

impl FromStr for BoundName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundName::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::BadSpec(format!("unknown bound `{s}`")))
    }
}

/// Exact value of a bound's right-hand side for radius value `sr`.
pub fn bound_value(name: BoundName, k: usize, kprime: usize, sr: i64) -> Result<Rational> {
    let (k, kp) = (k as i64, kprime as i64);
    let sr = Rational::integer(sr);
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::bad_k(format!("{}: requires {what} (k = {k}, k' = {kp})", name.name())))
        }
    };
    match name {
        BoundName::Thm34 => {
            need(k > kp && kp >= 1, "k > k' >= 1")?;
            Ok(Rational::new(k, k - kp) * sr)
        }
        BoundName::Conjecture => {
            need(k > kp && kp >= 1, "k > k' >= 1")?;
            Ok(Rational::new(k, k - kp) * sr - Rational::new(kp * (kp - 1), k - kp))
        }
        BoundName::ThmK2 => {
            need(k > 2, "k > 2")?;
            Ok(Rational::new(k, k - 2) * sr - Rational::new(2, k - 2))
        }
        BoundName::ThmK3 => {
            need(k > 3, "k > 3")?;
            Ok(Rational::new(k, k - 3) * sr - Rational::new(6, k - 3))
        }
        BoundName::TreeK1 => {
            need(k > 1, "k > 1")?;
            Ok(Rational::new(k, k - 1) * sr)
        }
        BoundName::GeneralHos => {
            need(k >= 1, "k >= 1")?;
            Ok(Rational::new(2 * (k + 1), 2 * k - 1) * sr)
        }
        BoundName::GeneralReiswig => {
            need(k >= 1, "k >= 1")?;
            Ok(Rational::new(k + 3, k + 1) * sr)
        }
    }
}
