//! Structured-text inputs: certificate and probe files for the continuous
//! representations, formal sums for the group-ring probes. Element syntax
//! mirrors the literals printed by the library (`affine(1/2,0)`, `zn(1,2)`,
//! ...); lines starting with `#` are comments.

use anyhow::{anyhow, bail, Context, Result};
use grouprep::dependency::DependencyCertificate;
use grouprep::functions;
use grouprep::groupring::{FormalSum, GaussianRational, LatticeKind};
use grouprep::groups::{parse_element, parse_rational, GroupElement, LatticeElement};
use grouprep::numerics::{Grid, SampledFunction, C64};
use grouprep::representations::RepresentationTag;

pub struct CertificateFile {
    pub certificate: DependencyCertificate,
    pub tolerance: Option<f64>,
}

pub struct ProbeFile {
    pub rep: RepresentationTag,
    pub vector: SampledFunction,
    pub elements: Vec<GroupElement>,
    pub threshold: Option<f64>,
}

/// `key = value` lines, order-free except that repeated keys append.
fn key_value_lines(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected `key = value`, got `{line}`", lineno + 1))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn single<'a>(pairs: &'a [(String, String)], key: &str) -> Result<&'a str> {
    let hits: Vec<&str> = pairs.iter().filter(|(k, _)| k == key).map(|(_, v)| v.as_str()).collect();
    match hits.len() {
        0 => bail!("missing `{key} = ...` line"),
        1 => Ok(hits[0]),
        n => bail!("`{key}` given {n} times"),
    }
}

fn optional<'a>(pairs: &'a [(String, String)], key: &str) -> Result<Option<&'a str>> {
    match single(pairs, key) {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.to_string().starts_with("missing") => Ok(None),
        Err(e) => Err(e),
    }
}

/// `line(lo,hi,n)` or `plane(x0,y0,x1,y1,nx,ny)`
pub fn parse_grid(text: &str) -> Result<Grid> {
    let text = text.trim();
    let (head, rest) =
        text.split_once('(').ok_or_else(|| anyhow!("not a grid literal: `{text}`"))?;
    let body = rest.strip_suffix(')').ok_or_else(|| anyhow!("missing `)` in `{text}`"))?;
    let nums: Vec<f64> = body
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| anyhow!("bad number `{s}` in `{text}`")))
        .collect::<Result<_>>()?;
    match head.trim() {
        "line" if nums.len() == 3 => {
            Ok(Grid::line(nums[0], nums[1], nums[2] as usize).map_err(|e| anyhow!("{e}"))?)
        }
        "plane" if nums.len() == 6 => Ok(Grid::plane(
            [nums[0], nums[1]],
            [nums[2], nums[3]],
            [nums[4] as usize, nums[5] as usize],
        )
        .map_err(|e| anyhow!("{e}"))?),
        _ => bail!("grid literal must be line(lo,hi,n) or plane(x0,y0,x1,y1,nx,ny): `{text}`"),
    }
}

/// `1`, `-0.5`, `i`, `-2i`, `1+2i`, `3.5e-1-1i`
pub fn parse_complex(text: &str) -> Result<C64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        bail!("empty coefficient");
    }
    let real = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| anyhow!("bad number `{t}` in `{text}`")),
        }
    };
    if let Some(head) = s.strip_suffix('i') {
        // split a+bi at the last sign that is not leading or an exponent sign
        for (idx, c) in head.char_indices().rev() {
            if (c == '+' || c == '-')
                && idx > 0
                && !matches!(head.as_bytes()[idx - 1], b'e' | b'E')
            {
                return Ok(C64::new(real(&head[..idx])?, real(&head[idx..])?));
            }
        }
        Ok(C64::new(0.0, real(head)?))
    } else {
        Ok(C64::new(real(&s)?, 0.0))
    }
}

/// `a`, `bi`, `a+bi` with exact rational parts (`p/q` or integers)
pub fn parse_gaussian_rational(text: &str) -> Result<GaussianRational> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let rat = |t: &str| {
        match t {
            "" | "+" => parse_rational("1"),
            "-" => parse_rational("-1"),
            _ => parse_rational(t),
        }
        .map_err(|e| anyhow!("{e}"))
    };
    if let Some(head) = s.strip_suffix('i') {
        for (idx, c) in head.char_indices().rev() {
            if (c == '+' || c == '-') && idx > 0 {
                return Ok(GaussianRational::new(rat(&head[..idx])?, rat(&head[idx..])?));
            }
        }
        Ok(GaussianRational::new(parse_rational("0").unwrap(), rat(head)?))
    } else {
        Ok(GaussianRational::new(rat(&s)?, parse_rational("0").unwrap()))
    }
}

fn parse_term(value: &str) -> Result<(C64, GroupElement)> {
    let (c, g) = value
        .split_once('*')
        .ok_or_else(|| anyhow!("term must read `coeff * element`, got `{value}`"))?;
    Ok((parse_complex(c)?, parse_element(g.trim()).map_err(|e| anyhow!("{e}"))?))
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile> {
    let pairs = key_value_lines(text)?;
    let rep = RepresentationTag::from_cli_name(single(&pairs, "representation")?)
        .map_err(|e| anyhow!("{e}"))?;
    let name = single(&pairs, "target")?;
    let eval = functions::by_name(name).ok_or_else(|| anyhow!("unknown target `{name}`"))?;
    let grid = parse_grid(single(&pairs, "grid")?)?;
    let tolerance = optional(&pairs, "tolerance")?
        .map(|t| t.parse::<f64>().map_err(|_| anyhow!("bad tolerance `{t}`")))
        .transpose()?;
    let terms: Vec<(C64, GroupElement)> = pairs
        .iter()
        .filter(|(k, _)| k == "term")
        .map(|(_, v)| parse_term(v))
        .collect::<Result<_>>()?;
    let f = SampledFunction::from_fn(grid, eval);
    let certificate =
        DependencyCertificate::h_pi(rep, terms, f).with_context(|| "malformed certificate")?;
    Ok(CertificateFile { certificate, tolerance })
}

pub fn parse_probe(text: &str) -> Result<ProbeFile> {
    let pairs = key_value_lines(text)?;
    let rep = RepresentationTag::from_cli_name(single(&pairs, "representation")?)
        .map_err(|e| anyhow!("{e}"))?;
    let name = single(&pairs, "vector")?;
    let eval = functions::by_name(name).ok_or_else(|| anyhow!("unknown vector `{name}`"))?;
    let grid = parse_grid(single(&pairs, "grid")?)?;
    let threshold = optional(&pairs, "threshold")?
        .map(|t| t.parse::<f64>().map_err(|_| anyhow!("bad threshold `{t}`")))
        .transpose()?;
    let elements: Vec<GroupElement> = pairs
        .iter()
        .filter(|(k, _)| k == "element")
        .map(|(_, v)| parse_element(v).map_err(|e| anyhow!("{e}")))
        .collect::<Result<_>>()?;
    if elements.is_empty() {
        bail!("probe file lists no `element = ...` lines");
    }
    Ok(ProbeFile { rep, vector: SampledFunction::from_fn(grid, eval), elements, threshold })
}

/// Formal sums serialize one term per line: `coeff * element-literal`.
/// The lattice kind is inferred from the first element.
pub fn parse_formal_sum(text: &str) -> Result<FormalSum<GaussianRational>> {
    let mut terms: Vec<(GaussianRational, LatticeElement)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (c, g) = line
            .split_once('*')
            .ok_or_else(|| anyhow!("line {}: expected `coeff * element`", lineno + 1))?;
        let el = match parse_element(g.trim()).map_err(|e| anyhow!("line {}: {e}", lineno + 1))? {
            GroupElement::Lattice(el) => el,
            other => bail!("line {}: `{other}` is not a lattice element", lineno + 1),
        };
        terms.push((parse_gaussian_rational(c)?, el));
    }
    let kind = match terms.first().map(|(_, g)| g) {
        Some(LatticeElement::Zn(v)) => LatticeKind::Zn(v.len()),
        Some(LatticeElement::ZMod { m, .. }) => LatticeKind::ZMod(*m),
        Some(LatticeElement::Heisenberg(h)) => LatticeKind::Heisenberg(h.a.len()),
        None => bail!("formal sum file has no terms"),
    };
    FormalSum::from_terms(kind, terms).map_err(|e| anyhow!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1").unwrap(), C64::new(1.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), C64::new(-2.5, 0.0));
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("1+2i").unwrap(), C64::new(1.0, 2.0));
        assert_eq!(parse_complex("3e-1-1i").unwrap(), C64::new(0.3, -1.0));
        assert!(parse_complex("chi").is_err());
    }

    #[test]
    fn gaussian_rational_forms() {
        let g = parse_gaussian_rational("1/2-3/4i").unwrap();
        assert_eq!(g.to_string(), "1/2-3/4i");
        assert_eq!(parse_gaussian_rational("-i").unwrap().to_string(), "-1i");
    }

    #[test]
    fn certificate_round_trip() {
        let text = "\
# exact dependency
representation = pi-affine
target = chi01
grid = line(-1, 2, 1024)
term = 1 * affine(1,0)
term = -0.7071067811865476 * affine(1/2,0)
term = -0.7071067811865476 * affine(1/2,1/2)
";
        let cert = parse_certificate(text).unwrap();
        assert_eq!(cert.certificate.terms.len(), 3);
        assert!(cert.tolerance.is_none());
    }

    #[test]
    fn probe_needs_elements() {
        let text = "representation = pi-affine\nvector = gaussian\ngrid = line(-8,8,64)\n";
        let err = parse_probe(text).err().map(|e| e.to_string()).unwrap();
        assert!(err.contains("element"));
    }

    #[test]
    fn formal_sum_kind_inferred() {
        let s = parse_formal_sum("1 * zn(1,0)\n-1 * zn(0,1)\n").unwrap();
        assert_eq!(s.kind(), LatticeKind::Zn(2));
        assert!(parse_formal_sum("1 * affine(1,0)\n").is_err());
    }
}
