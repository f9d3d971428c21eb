use serde_json::{json, Value};

use super::QGroupExpr::{self, *};
use crate::canon::ClassicalPermGroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fmt {
    Text,
    Json,
    Latex,
}

pub fn render(e: &QGroupExpr, fmt: Fmt) -> String {
    match fmt {
        Fmt::Text => text(e),
        Fmt::Latex => latex(e),
        Fmt::Json => to_json(e).to_string(),
    }
}

/// Name of a classical group from the cyclic, dihedral and symmetric
/// families, if it belongs to one.
enum Catalog {
    Cyclic(u64),
    Dihedral(u64),
    Symmetric(usize),
    Other(u64),
}

fn catalog(g: &ClassicalPermGroup) -> Catalog {
    let d = g.degree();
    if d <= 12 {
        if g.is_cyclic() {
            return Catalog::Cyclic(g.order());
        }
        if let Some(m) = g.dihedral_rank() {
            return Catalog::Dihedral(m);
        }
        if (1..=d as u64).product::<u64>() == g.order() {
            return Catalog::Symmetric(d);
        }
    }
    Catalog::Other(g.order())
}

fn is_compound(e: &QGroupExpr) -> bool {
    matches!(e, FreeProduct(_) | FreeWreath(..) | InhomFreeWreath(..))
}

fn text(e: &QGroupExpr) -> String {
    let wrap = |x: &QGroupExpr| {
        if is_compound(x) {
            format!("({})", text(x))
        } else {
            text(x)
        }
    };
    match e {
        Trivial => "1".into(),
        SymQ(n) => format!("S^+({n})"),
        Classical(g) => match catalog(g) {
            Catalog::Cyclic(n) => format!("Z_{n}"),
            Catalog::Dihedral(m) => format!("D_{m}"),
            Catalog::Symmetric(d) => format!("S_{d}"),
            Catalog::Other(k) => format!("Grp(order={k})"),
        },
        FreeProduct(fs) => fs.iter().map(wrap).collect::<Vec<_>>().join(" * "),
        FreeWreath(g, h) => format!("{} wr* {}", wrap(g), wrap(h)),
        InhomFreeWreath(fs, h) => {
            let parts: Vec<String> = fs.iter().map(|(g, _)| text(g)).collect();
            format!("({}) wrwr* {}", parts.join(","), wrap(h))
        }
    }
}

fn latex(e: &QGroupExpr) -> String {
    let wrap = |x: &QGroupExpr| {
        if is_compound(x) {
            format!("\\left({}\\right)", latex(x))
        } else {
            latex(x)
        }
    };
    match e {
        Trivial => "1".into(),
        SymQ(n) => format!("\\mathbb{{S}}_{{{n}}}^+"),
        Classical(g) => match catalog(g) {
            Catalog::Cyclic(n) => format!("\\mathbb{{Z}}_{{{n}}}"),
            Catalog::Dihedral(m) => format!("D_{{{m}}}"),
            Catalog::Symmetric(d) => format!("S_{{{d}}}"),
            Catalog::Other(k) => format!("\\mathrm{{Grp}}_{{{k}}}"),
        },
        FreeProduct(fs) => fs.iter().map(wrap).collect::<Vec<_>>().join(" \\ast "),
        FreeWreath(g, h) => format!("{} \\wr_\\ast {}", wrap(g), wrap(h)),
        InhomFreeWreath(fs, h) => {
            let parts: Vec<String> = fs.iter().map(|(g, _)| latex(g)).collect();
            format!("\\left({}\\right) \\mathbin{{\\wr\\wr_\\ast}} {}", parts.join(", "), wrap(h))
        }
    }
}

pub fn to_json(e: &QGroupExpr) -> Value {
    match e {
        Trivial => json!({"t": "trivial"}),
        SymQ(n) => json!({"t": "symq", "n": n}),
        Classical(g) => json!({
            "t": "classical",
            "degree": g.degree(),
            "order": g.order(),
            "gens": g.generators(),
        }),
        FreeProduct(fs) => json!({"t": "freeprod", "factors": fs.iter().map(to_json).collect::<Vec<_>>()}),
        FreeWreath(g, h) => json!({"t": "freewreath", "inner": to_json(g), "outer": to_json(h)}),
        InhomFreeWreath(fs, h) => json!({
            "t": "inhomwreath",
            "factors": fs.iter().map(|(g, k)| json!({"g": to_json(g), "k": k})).collect::<Vec<_>>(),
            "base": to_json(h),
        }),
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidExpr(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn uint(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?
        .as_u64()
        .ok_or_else(|| bad(format!("field `{key}` is not a non-negative integer")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| bad(format!("field `{key}` is not an array")))
}

/// Parses the JSON schema produced by [`to_json`]. The result is returned
/// as written; pass it through `normalize` to obtain the normal form.
pub fn from_json(v: &Value) -> Result<QGroupExpr> {
    let tag = field(v, "t")?
        .as_str()
        .ok_or_else(|| bad("field `t` is not a string"))?;
    Ok(match tag {
        "trivial" => Trivial,
        "symq" => SymQ(uint(v, "n")? as usize),
        "classical" => {
            let degree = uint(v, "degree")? as usize;
            let gens = array(v, "gens")?
                .iter()
                .map(|g| {
                    g.as_array()
                        .ok_or_else(|| bad("generator is not an array"))?
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .and_then(|x| u32::try_from(x).ok())
                                .ok_or_else(|| bad("generator entry is not a point"))
                        })
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let g = ClassicalPermGroup::from_generators(degree, gens)?;
            let order = uint(v, "order")?;
            if g.order() != order {
                return Err(bad(format!(
                    "generators give order {}, not {order}",
                    g.order()
                )));
            }
            Classical(g)
        }
        "freeprod" => FreeProduct(
            array(v, "factors")?
                .iter()
                .map(from_json)
                .collect::<Result<_>>()?,
        ),
        "freewreath" => FreeWreath(
            Box::new(from_json(field(v, "inner")?)?),
            Box::new(from_json(field(v, "outer")?)?),
        ),
        "inhomwreath" => InhomFreeWreath(
            array(v, "factors")?
                .iter()
                .map(|f| Ok((from_json(field(f, "g")?)?, uint(f, "k")? as usize)))
                .collect::<Result<_>>()?,
            Box::new(from_json(field(v, "base")?)?),
        ),
        other => return Err(bad(format!("unknown tag `{other}`"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexpr::*;

    fn dihedral(n: usize) -> ClassicalPermGroup {
        let rot: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
        ClassicalPermGroup::from_generators(n, vec![rot, refl]).unwrap()
    }

    #[test]
    fn text_examples() {
        let c4 = free_wreath(sym_q(2), sym_q(2)).unwrap();
        assert_eq!(render(&c4, Fmt::Text), "S^+(2) wr* S^+(2)");
        assert_eq!(render(&Trivial, Fmt::Text), "1");
        assert_eq!(render(&classical(dihedral(5)), Fmt::Text), "D_5");
        let d = free_product(vec![sym_q(2), sym_q(2)]).unwrap();
        assert_eq!(render(&d, Fmt::Text), "S^+(2) * S^+(2)");
        let nested = free_wreath(d, sym_q(3)).unwrap();
        assert_eq!(render(&nested, Fmt::Text), "(S^+(2) * S^+(2)) wr* S^+(3)");
    }

    #[test]
    fn catalog_names() {
        let z3 = ClassicalPermGroup::from_generators(3, vec![vec![1, 2, 0]]).unwrap();
        assert_eq!(render(&classical(z3), Fmt::Text), "Z_3");
        let s4 = ClassicalPermGroup::from_generators(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(render(&classical(s4), Fmt::Text), "S_4");
        let a4 = ClassicalPermGroup::from_generators(4, vec![vec![1, 2, 0, 3], vec![0, 2, 3, 1]]).unwrap();
        assert_eq!(render(&classical(a4), Fmt::Text), "Grp(order=12)");
        let k4 = ClassicalPermGroup::from_generators(4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        assert_eq!(render(&classical(k4), Fmt::Text), "D_2");
    }

    #[test]
    fn latex_examples() {
        let c4 = free_wreath(sym_q(2), sym_q(2)).unwrap();
        assert_eq!(render(&c4, Fmt::Latex), "\\mathbb{S}_{2}^+ \\wr_\\ast \\mathbb{S}_{2}^+");
    }

    #[test]
    fn json_round_trip() {
        let grp = ClassicalPermGroup::from_generators(6, vec![vec![3, 4, 5, 0, 1, 2], vec![0, 5, 4, 3, 2, 1]]).unwrap();
        let inhom = inhom_free_wreath(vec![(sym_q(2), 2), (Trivial, 4)], classical(grp)).unwrap();
        let e = free_product(vec![
            inhom,
            free_wreath(sym_q(2), sym_q(2)).unwrap(),
            classical(dihedral(5)),
        ])
        .unwrap();
        let text = render(&e, Fmt::Json);
        let back = from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, e);
        assert_eq!(
            serde_json::from_str::<Value>(&render(&Trivial, Fmt::Json)).unwrap(),
            json!({"t": "trivial"})
        );
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(from_json(&json!({"t": "bogus"})).is_err());
        assert!(from_json(&json!({"t": "symq"})).is_err());
        assert!(from_json(&json!({"t": "classical", "degree": 2, "order": 3, "gens": [[1, 0]]})).is_err());
        assert!(from_json(&json!({"t": "classical", "degree": 2, "order": 2, "gens": [[1, 1]]})).is_err());
    }
}
