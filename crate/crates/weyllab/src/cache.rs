//! On-disk cache of Shapovalov elements.
//!
//! Every file records the PBW order key and the engine version; a file
//! written under a different order is ignored and overwritten.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde_json::{json, Value};
use weyllab_core::arith::Rat;
use weyllab_core::pbw::{Gen, Uea, ENGINE_VERSION, NVARS, ORDER_KEY};
use weyllab_core::poly::HPoly;
use weyllab_core::rootdata::RootElement;
use weyllab_core::shapovalov::ShapovalovElement;

pub const ENV_VAR: &str = "WEYLLAB_CACHE";

pub struct Cache {
    dir: PathBuf,
}

pub fn rat_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (d != BigInt::from(0)).then(|| Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Exact JSON form of an element of `U(b⁻) ⊗ S(h)`.
pub fn uea_to_json(u: &Uea) -> Value {
    let terms: Vec<Value> = u
        .terms()
        .map(|(word, coeff)| {
            let monomials: Vec<Value> =
                coeff.terms().map(|(exp, c)| json!({ "exponents": exp, "value": rat_string(c) })).collect();
            json!({
                "word": word.iter().map(|g| json!([g.g0, g.g1])).collect::<Vec<_>>(),
                "coefficient": monomials,
            })
        })
        .collect();
    Value::Array(terms)
}

pub fn uea_from_json(v: &Value) -> Option<Uea> {
    let mut u = Uea::zero();
    for term in v.as_array()? {
        let mut word = Vec::new();
        for g in term.get("word")?.as_array()? {
            let g0 = g.get(0)?.as_i64()?;
            let g1 = g.get(1)?.as_i64()?;
            if !weyllab_core::pbw::is_positive_root(g0, g1) {
                return None;
            }
            word.push(Gen::f(g0, g1));
        }
        let mut monomials = Vec::new();
        for m in term.get("coefficient")?.as_array()? {
            let exp: Vec<u32> =
                m.get("exponents")?.as_array()?.iter().map(|e| e.as_u64().map(|e| e as u32)).collect::<Option<_>>()?;
            if exp.len() != NVARS {
                return None;
            }
            monomials.push((exp, parse_rat(m.get("value")?.as_str()?)?));
        }
        u.add_term(word, HPoly::from_terms(NVARS, monomials));
    }
    Some(u)
}

impl Cache {
    /// The directory from the config, else from `WEYLLAB_CACHE`.
    pub fn locate(configured: Option<&Path>) -> Option<Cache> {
        let dir = configured.map(Path::to_path_buf).or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))?;
        Some(Cache { dir })
    }

    fn path(&self, gamma: &RootElement, d: u32, eta: Option<usize>) -> PathBuf {
        let g: Vec<String> = gamma.coeffs.iter().map(|c| c.to_string()).collect();
        let eta = eta.map(|k| format!("-eta{k}")).unwrap_or_default();
        self.dir.join(format!("z-{}-d{d}{eta}.json", g.join("_")))
    }

    pub fn get(&self, gamma: &RootElement, d: u32, eta: Option<usize>) -> Option<ShapovalovElement> {
        let text = std::fs::read_to_string(self.path(gamma, d, eta)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v.get("order_key")?.as_str()? != ORDER_KEY || v.get("engine_version")?.as_u64()? != u64::from(ENGINE_VERSION)
        {
            return None;
        }
        let stored: Vec<i64> = v.get("gamma")?.as_array()?.iter().map(Value::as_i64).collect::<Option<_>>()?;
        if stored != gamma.coeffs || v.get("D")?.as_u64()? != u64::from(d) {
            return None;
        }
        let avoided = v.get("eta")?.as_u64().map(|k| k as usize);
        if avoided != eta {
            return None;
        }
        Some(ShapovalovElement {
            element: uea_from_json(v.get("terms")?)?,
            gamma: gamma.clone(),
            d,
            avoided,
            leading_scale: v.get("leading_scale")?.as_i64()?,
        })
    }

    pub fn put(&self, z: &ShapovalovElement) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let v = json!({
            "order_key": ORDER_KEY,
            "engine_version": ENGINE_VERSION,
            "gamma": z.gamma.coeffs,
            "D": z.d,
            "eta": z.avoided,
            "leading_scale": z.leading_scale,
            "terms": uea_to_json(&z.element),
        });
        let path = self.path(&z.gamma, z.d, z.avoided);
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string(&v)?)?;
        std::fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use weyllab_core::rootdata::RootDatum;
    use weyllab_core::shapovalov;

    #[test]
    fn round_trip_and_key_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache { dir: dir.path().to_path_buf() };
        let d = RootDatum::a1();
        let gamma = RootElement::new(vec![2, 1]);
        let z = shapovalov::integral_shapovalov(&d, &gamma, 1).unwrap();
        let z0 = shapovalov::eta_avoiding(&d, &z, 0).unwrap();
        cache.put(&z).unwrap();
        cache.put(&z0).unwrap();
        assert_eq!(cache.get(&gamma, 1, None), Some(z));
        assert_eq!(cache.get(&gamma, 1, Some(0)), Some(z0));
        assert_eq!(cache.get(&gamma, 2, None), None);
        let path = cache.path(&gamma, 1, None);
        let text = std::fs::read_to_string(&path).unwrap().replace(ORDER_KEY, "other-order");
        std::fs::write(&path, text).unwrap();
        assert_eq!(cache.get(&gamma, 1, None), None);
    }
}
