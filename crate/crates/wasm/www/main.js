import init, { spectrum, contains, witness } from "./pkg/classpec_wasm.js";

const $ = (id) => document.getElementById(id);

function group() {
  return [$("family").value, Number($("n").value), Number($("q").value), $("eps").value];
}

function show(json, render) {
  const v = JSON.parse(json);
  const out = $("out");
  out.replaceChildren();
  if (v.error) {
    const p = document.createElement("p");
    p.className = "err";
    p.textContent = v.error;
    out.append(p);
    return;
  }
  render(v, out);
}

function para(out, text) {
  const p = document.createElement("p");
  p.textContent = text;
  out.append(p);
}

function block(out, text) {
  const pre = document.createElement("pre");
  pre.textContent = text;
  out.append(pre);
}

function renderSpectrum(v, out) {
  para(out, v.group === v.evaluated_as ? v.group : `${v.group}, evaluated as ${v.evaluated_as}`);
  v.notes.forEach((n) => para(out, n));
  para(out, `maximal orders: ${v.mu.join(", ")}`);
  block(out, v.sources.map((s) => `${s.value.padStart(10)}  ${s.items.join("; ")}`).join("\n"));
}

function renderContains(v, out) {
  para(out, `${v.group} ${v.contains ? "has" : "has no"} elements of order ${v.order}`);
}

function renderWitness(v, out) {
  para(out, `${v.group}: order ${v.order}, from ${v.source ?? "identity"} (power ${v.power})`);
  para(out, `field ${v.field}, modulus coefficients (low first) ${v.modulus.join(" ")}`);
  const w = Math.max(...v.matrix.flat().map((x) => String(x).length));
  block(out, v.matrix.map((r) => r.map((x) => String(x).padStart(w)).join(" ")).join("\n"));
}

await init();
$("go-spectrum").onclick = () => show(spectrum(...group()), renderSpectrum);
$("go-contains").onclick = () => show(contains(...group(), $("m").value), renderContains);
$("go-witness").onclick = () => show(witness(...group(), $("m").value), renderWitness);
