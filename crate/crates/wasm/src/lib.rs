//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON string; errors become rejected JS exceptions carrying the
//! message.

use lfsm::analysis::diffusion_delay;
use lfsm::families::hardware_metrics;
use lfsm::gf2::{is_primitive, Primitivity};
use lfsm::io::{self, Document};
use lfsm::search::{gen_hw, Algorithm, GenConfig};
use lfsm::{F2Vec, FactorTable, Gf2Poly};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn primitive_value(p: Primitivity) -> Value {
    match p {
        Primitivity::Primitive => json!(true),
        Primitivity::IrreducibleUnknownOrder => json!("unknown"),
        _ => json!(false),
    }
}

/// Metrics of an automaton given as Automaton JSON, word JSON or ring text.
pub fn analyze_text(text: &str) -> Result<String, String> {
    let (doc, _) = io::parse_document(text).map_err(|e| e.to_string())?;
    let Document::Lfsm(l) = doc else {
        return Err("expected a binary automaton".into());
    };
    let m = hardware_metrics(l.transition());
    let d = diffusion_delay(l.transition());
    let q = l.connection_polynomial();
    let primitive =
        if q.degree() == Some(l.n()) { primitive_value(is_primitive(&q, &FactorTable::builtin())) } else { json!(false) };
    Ok(json!({
        "n": l.n(),
        "diffusion_delay": serde_json::to_value(&d).map_err(|e| e.to_string())?["delay"],
        "critical_path": m.critical_path,
        "fan_out": m.fan_out,
        "cost": m.cost,
        "connection_poly": q.to_string(),
        "primitive": primitive,
    })
    .to_string())
}

/// States at clocks `0..=steps` in the cells `n-1..1 0` display, plus the
/// first output bits. A rational machine reports bits and carries instead.
pub fn simulate_text(text: &str, init_hex: &str, steps: usize) -> Result<String, String> {
    let steps = steps.min(4096);
    match io::parse_document(text).map_err(|e| e.to_string())?.0 {
        Document::Lfsm(mut l) => {
            if !init_hex.trim().is_empty() {
                let s = F2Vec::from_hex(init_hex, l.n()).map_err(|e| e.to_string())?;
                l.set_state(s).map_err(|e| e.to_string())?;
            }
            let states: Vec<String> = l.trajectory(steps).iter().map(F2Vec::cells_display).collect();
            Ok(json!({ "states": states }).to_string())
        }
        Document::Rlfsm(mut r) => {
            if !init_hex.trim().is_empty() {
                let n = r.n();
                let m = F2Vec::from_hex(init_hex, n).map_err(|e| e.to_string())?;
                r.set_state(m, vec![Gf2Poly::zero(); n]).map_err(|e| e.to_string())?;
            }
            let mut rows = Vec::with_capacity(steps + 1);
            for t in 0..=steps {
                if t > 0 {
                    r.step();
                }
                let carries: Vec<String> = r.carries().iter().map(|c| c.to_string()).collect();
                let bits: String = r.bits().iter().map(|b| if b { '1' } else { '0' }).collect();
                rows.push(json!({ "m": bits, "c": carries }));
            }
            Ok(json!({ "rational": rows }).to_string())
        }
    }
}

/// A random ring register with a primitive connection polynomial, by the
/// cofactor scan. `n <= 128`.
pub fn generate_ring_text(n: usize, feedbacks: usize, seed: u64) -> Result<String, String> {
    if n > 128 {
        return Err("the demo is limited to 128 cells".into());
    }
    let mut cfg = GenConfig::new(n, feedbacks, seed);
    cfg.max_trials = 10_000;
    let algo = if feedbacks == 0 { Algorithm::Naive } else { Algorithm::Cofactor };
    let r = gen_hw(&cfg, algo).map_err(|e| e.to_string())?;
    let automaton: Value = serde_json::from_str(&io::lfsm_to_json(&r.automaton, false)).map_err(|e| e.to_string())?;
    Ok(json!({
        "trials": r.trials,
        "connection_poly": r.connection.to_string(),
        "diffusion_delay": serde_json::to_value(&r.diffusion).map_err(|e| e.to_string())?["delay"],
        "critical_path": r.metrics.critical_path,
        "fan_out": r.metrics.fan_out,
        "cost": r.metrics.cost,
        "automaton": automaton,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn analyze(text: &str) -> Result<String, JsValue> {
    analyze_text(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn simulate(text: &str, init_hex: &str, steps: usize) -> Result<String, JsValue> {
    simulate_text(text, init_hex, steps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate_ring(n: usize, feedbacks: usize, seed: u64) -> Result<String, JsValue> {
    generate_ring_text(n, feedbacks, seed).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_ring_text() {
        let v: Value = serde_json::from_str(&analyze_text("n=8; (3,7) (7,2)").unwrap()).unwrap();
        assert_eq!(v["connection_poly"], "x^8+x^6+x^5+x^3+1");
        assert_eq!(v["primitive"], true);
        assert_eq!(v["cost"], 2);
    }

    #[test]
    fn simulate_ring_and_windmill() {
        let v: Value = serde_json::from_str(&simulate_text("n=8; (3,7) (7,2)", "0x01", 2).unwrap()).unwrap();
        assert_eq!(v["states"][2], "0100100 0");
        let w = r#"{"kind":"windmill","alpha":"x^5+x^3+x^2+1","beta":"1","shifts":[1,0,0,0]}"#;
        let v: Value = serde_json::from_str(&simulate_text(w, "0x1", 1).unwrap()).unwrap();
        assert_eq!(v["rational"][1]["m"], "0001");
        assert_eq!(v["rational"][1]["c"][3], "x^4+x^2+x");
    }

    #[test]
    fn generate_is_seeded() {
        let a = generate_ring_text(16, 8, 3).unwrap();
        assert_eq!(a, generate_ring_text(16, 8, 3).unwrap());
        assert!(generate_ring_text(200, 8, 3).is_err());
        assert!(simulate_text("garbage", "", 1).is_err());
    }
}
