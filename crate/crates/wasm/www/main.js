// Expects the wasm-bindgen output (target "web") in ./pkg.
import init, { analyze, simulate, generate_ring } from "./pkg/lfsm_wasm.js";

const $ = (id) => document.getElementById(id);

function show(out, f) {
  try {
    out.textContent = f();
  } catch (e) {
    out.textContent = "error: " + e;
  }
}

function simulateView(json) {
  const v = JSON.parse(json);
  if (v.states) {
    return v.states.map((s, t) => `${String(t).padStart(4)}  ${s}`).join("\n");
  }
  return v.rational.map((r, t) => `${String(t).padStart(4)}  ${r.m}  ${r.c.join("  |  ")}`).join("\n");
}

await init();

$("analyze-run").onclick = () =>
  show($("analyze-out"), () => JSON.stringify(JSON.parse(analyze($("analyze-input").value)), null, 2));

$("sim-run").onclick = () =>
  show($("sim-out"), () => simulateView(simulate($("sim-input").value, $("sim-init").value, Number($("sim-steps").value))));

$("gen-run").onclick = () =>
  show($("gen-out"), () => {
    const v = JSON.parse(generate_ring(Number($("gen-n").value), Number($("gen-f").value), BigInt($("gen-seed").value)));
    $("analyze-input").value = JSON.stringify(v.automaton);
    delete v.automaton;
    return JSON.stringify(v, null, 2) + "\n(automaton copied into the Analyze box)";
  });
