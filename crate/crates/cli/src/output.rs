//! Serialization of a computed lattice: versioned JSON, Graphviz DOT, and a
//! human-readable text listing. All output is deterministic for a fixed
//! lattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use subfields_core::arith::q_poly::QPoly;
use subfields_core::lattice::Lattice;
use subfields_core::numfield::KPoly;

use crate::parse::render_zpoly;

#[derive(Serialize, Deserialize, Debug)]
pub struct JsonOutput {
    pub schema: u32,
    pub degree: usize,
    /// Monic defining polynomial, coefficients low to high as decimal strings.
    pub poly: Vec<String>,
    /// Equation prime used for Phase I.
    pub prime: u64,
    pub factorization: Vec<JsonFactor>,
    pub principal: Vec<JsonPrincipal>,
    pub subfields: Vec<JsonSubfield>,
    /// Pairs [child, parent] of indices into `subfields`.
    pub hasse_edges: Vec<[usize; 2]>,
    pub verified: bool,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct JsonFactor {
    pub index: usize,
    pub degree: usize,
    /// One rational-string vector (length n, powers of alpha low to high)
    /// per x-coefficient, low to high.
    pub coeffs_over_alpha: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct JsonPrincipal {
    pub index: usize,
    pub partition: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct JsonSubfield {
    pub partition: Vec<Vec<usize>>,
    pub degree: usize,
    pub subfield_poly_factor_indices: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<String>>>,
}

fn rational_str(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn rep_strings(rep: &QPoly, n: usize) -> Vec<String> {
    (0..n).map(|i| rational_str(&rep.coeff(i))).collect()
}

pub fn to_json(lat: &Lattice, verified: bool) -> JsonOutput {
    let n = lat.field.degree();
    let factorization = lat
        .sf
        .factors()
        .iter()
        .enumerate()
        .map(|(i, f)| JsonFactor {
            index: i + 1,
            degree: f.degree().unwrap(),
            coeffs_over_alpha: (0..=f.degree().unwrap())
                .map(|b| rep_strings(&f.coeff_rep(b), n))
                .collect(),
        })
        .collect();
    let principal = lat
        .principal
        .iter()
        .enumerate()
        .map(|(i, p)| JsonPrincipal {
            index: i + 1,
            partition: p.parts_1based(),
        })
        .collect();
    let subfields = lat
        .records
        .iter()
        .map(|r| JsonSubfield {
            partition: r.partition.parts_1based(),
            degree: r.degree_over_q,
            subfield_poly_factor_indices: r.subfield_poly_part.iter().map(|i| i + 1).collect(),
            generators: r
                .generators
                .as_ref()
                .map(|gs| gs.iter().map(|g| rep_strings(g.rep(), n)).collect()),
        })
        .collect();
    JsonOutput {
        schema: 1,
        degree: n,
        poly: lat
            .field
            .min_poly()
            .coeffs
            .iter()
            .map(|c| c.to_string())
            .collect(),
        prime: lat.prime,
        factorization,
        principal,
        subfields,
        hasse_edges: lat.edges.iter().map(|&(a, b)| [a, b]).collect(),
        verified,
    }
}

pub fn render_json(lat: &Lattice, verified: bool) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(lat, verified)).expect("serializable");
    s.push('\n');
    s
}

/// One term "c*a^i" of an element of K; `a` stands for alpha.
fn render_nf_rep(rep: &QPoly) -> String {
    if rep.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for i in (0..rep.coeffs.len()).rev() {
        let c = rep.coeff(i);
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let show = !mag.is_one() || i == 0;
        if show {
            out.push_str(&rational_str(&mag));
        }
        if i >= 1 {
            if show {
                out.push('*');
            }
            out.push('a');
            if i >= 2 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    out
}

/// Render a polynomial over K with alpha printed as `a`.
pub fn render_kpoly(f: &KPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for i in (0..=f.degree().unwrap()).rev() {
        let rep = f.coeff_rep(i);
        if rep.is_zero() {
            continue;
        }
        let simple = rep.coeffs.iter().filter(|c| !c.is_zero()).count() == 1;
        let rendered = render_nf_rep(&rep);
        let (sign, body) = if let Some(stripped) = rendered.strip_prefix('-') {
            ("-", stripped.to_string())
        } else {
            ("+", rendered)
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        let is_unit = body == "1";
        if i == 0 {
            out.push_str(&body);
        } else {
            if !is_unit {
                if simple {
                    out.push_str(&body);
                    out.push('*');
                } else {
                    out.push('(');
                    out.push_str(&body);
                    out.push_str(")*");
                }
            }
            out.push('x');
            if i >= 2 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    out
}

fn parts_str(parts: &[Vec<usize>]) -> String {
    let inner: Vec<String> = parts
        .iter()
        .map(|p| {
            let xs: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", xs.join(","))
        })
        .collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn render_text(lat: &Lattice, verified: Option<bool>) -> String {
    let mut out = String::new();
    let k = &lat.field;
    out.push_str(&format!(
        "f = {}  (degree {})\n",
        render_zpoly(k.min_poly()),
        k.degree()
    ));
    if k.alpha_scale() != &BigInt::one() {
        out.push_str(&format!(
            "input {} was scaled monic: a = {} * (root of input)\n",
            render_zpoly(k.input_poly()),
            k.alpha_scale()
        ));
    }
    out.push_str(&format!(
        "equation prime p = {}, certification prime q = {}\n",
        lat.prime, lat.cert_prime
    ));
    out.push_str(&format!(
        "subfield factorization over Q(a): r = {} factors\n",
        lat.sf.r()
    ));
    for (i, f) in lat.sf.factors().iter().enumerate() {
        out.push_str(&format!("  f_{} = {}\n", i + 1, render_kpoly(f)));
    }
    out.push_str("principal subfield partitions:\n");
    for (i, p) in lat.principal.iter().enumerate() {
        out.push_str(&format!("  P_{} = {}\n", i + 1, parts_str(&p.parts_1based())));
    }
    out.push_str(&format!("subfields: m = {}\n", lat.records.len()));
    for (idx, r) in lat.records.iter().enumerate() {
        let indices: Vec<String> = r
            .subfield_poly_part
            .iter()
            .map(|i| format!("f_{}", i + 1))
            .collect();
        out.push_str(&format!(
            "  #{idx}: degree {} over Q, partition {}, subfield polynomial = {}",
            r.degree_over_q,
            parts_str(&r.partition.parts_1based()),
            indices.join("*"),
        ));
        if let Some(i) = r.is_principal {
            out.push_str(&format!("  [principal: L_{i}]"));
        }
        out.push('\n');
        if let Some(gens) = &r.generators {
            if gens.is_empty() {
                out.push_str("       generators: (none needed, L = Q)\n");
            } else {
                let gs: Vec<String> = gens.iter().map(|g| render_nf_rep(g.rep())).collect();
                out.push_str(&format!("       generators: {}\n", gs.join(", ")));
            }
        }
    }
    out.push_str("inclusions (child < parent):\n");
    for &(a, b) in &lat.edges {
        out.push_str(&format!("  #{a} < #{b}\n"));
    }
    if let Some(v) = verified {
        out.push_str(&format!("verified: {v}\n"));
    }
    out
}

pub fn render_dot(lat: &Lattice) -> String {
    let mut out = String::new();
    out.push_str("digraph subfields {\n");
    out.push_str("  rankdir=\"BT\";\n");
    out.push_str("  node [shape=box];\n");
    for (i, r) in lat.records.iter().enumerate() {
        out.push_str(&format!("  s{i} [label=\"deg {}\"];\n", r.degree_over_q));
    }
    for &(a, b) in &lat.edges {
        out.push_str(&format!("  s{a} -> s{b};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use subfields_core::arith::z_poly::ZPoly;
    use subfields_core::numfield::NumberField;

    #[test]
    fn kpoly_rendering() {
        let k: Arc<NumberField> =
            NumberField::new(&ZPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 1])).unwrap();
        let a = k.alpha();
        let f = KPoly::from_elems(vec![a.pow(2), a.neg(), k.one_elem()]);
        assert_eq!(render_kpoly(&f), "x^2 - a*x + a^2");
        assert_eq!(render_kpoly(&k.x_minus_alpha()), "x - a");
    }
}
