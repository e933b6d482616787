import init, { distanceReport, errorSweep, zProfile } from "./pkg/clusterdist_web.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

function graphInput() {
  const g = $("graph").value;
  return g === "custom" ? $("edges").value + "\n" : g;
}

function show(value, exact) {
  return exact ? `${value.toFixed(6)} (${exact})` : value.toFixed(6);
}

function call(f) {
  $("status").textContent = "";
  try {
    return JSON.parse(f());
  } catch (e) {
    $("status").textContent = String(e);
    return null;
  }
}

function vertexPositions(n, w, h) {
  const r = Math.min(w, h) / 2 - 30;
  return Array.from({ length: n }, (_, i) => {
    const a = -Math.PI / 2 + (2 * Math.PI * i) / n;
    return [w / 2 + r * Math.cos(a), h / 2 + r * Math.sin(a)];
  });
}

function drawGraph(graph, partition, errorQubit) {
  const c = $("graph-canvas");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  const pos = vertexPositions(graph.n, c.width, c.height);
  const block = new Array(graph.n + 1).fill(-1);
  (partition || []).forEach((b, i) => b.forEach((q) => (block[q] = i)));

  ctx.strokeStyle = "#888";
  ctx.lineWidth = 2;
  for (const [i, j] of graph.edges) {
    ctx.beginPath();
    ctx.moveTo(...pos[i - 1]);
    ctx.lineTo(...pos[j - 1]);
    ctx.stroke();
  }
  pos.forEach(([x, y], i) => {
    const q = i + 1;
    ctx.beginPath();
    ctx.arc(x, y, 16, 0, 2 * Math.PI);
    ctx.fillStyle = block[q] >= 0 ? COLORS[block[q] % COLORS.length] : "#ccc";
    ctx.fill();
    if (q === errorQubit) {
      ctx.lineWidth = 4;
      ctx.strokeStyle = "#000";
      ctx.stroke();
      ctx.lineWidth = 2;
      ctx.strokeStyle = "#888";
    }
    ctx.fillStyle = "#fff";
    ctx.font = "bold 14px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(String(q), x, y);
  });
}

function table(headers, rows) {
  const head = `<tr>${headers.map((h) => `<th>${h}</th>`).join("")}</tr>`;
  const body = rows.map((r) => `<tr>${r.map((x) => `<td>${x}</td>`).join("")}</tr>`).join("");
  return `<table>${head}${body}</table>`;
}

function fmtPartition(p) {
  return p.map((b) => `{${b.join(",")}}`).join(" ");
}

function runDistance() {
  const error = $("error").value;
  const r = call(() => distanceReport(graphInput(), error, $("metric").value));
  if (!r) return;
  drawGraph(r.graph, r.optimal_partition, parseInt(error.slice(1), 10));
  $("summary").innerHTML =
    `standard: ${show(r.standard, r.standard_exact)}<br>` +
    `weighted: ${show(r.weighted, r.weighted_exact)}<br>` +
    `optimal partition: ${fmtPartition(r.optimal_partition)}`;
  $("blocks").innerHTML = table(
    ["Block", "Distance", "Weight", "Term"],
    r.blocks.map((b, i) => [
      `<span style="color:${COLORS[i % COLORS.length]}">{${b.qubits.join(",")}}</span>`,
      b.distance.toFixed(6),
      `1/${b.qubits.length}`,
      b.term.toFixed(6),
    ]),
  );
}

function runSweep() {
  const r = call(() => errorSweep(graphInput(), $("metric").value));
  if (!r) return;
  drawGraph(r.graph, null, null);
  $("summary").textContent = "";
  $("blocks").innerHTML = "";
  const groups = table(
    ["Weighted", "Errors"],
    r.groups.map(([exact, value, errors]) => [show(value, exact), errors.join(", ")]),
  );
  const rows = table(
    ["Error", "Weighted", "Optimal partition"],
    r.rows.map((x) => [x.error, show(x.weighted, x.weighted_exact), fmtPartition(x.optimal_partition)]),
  );
  $("sweep").innerHTML = groups + rows;
}

function runProfile() {
  const nmax = parseInt($("nmax").value, 10);
  const pts = call(() => zProfile(nmax, $("metric").value));
  if (!pts) return;
  const c = $("profile-canvas");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  const pad = 40;
  const maxY = Math.max(...pts.map((p) => p.weighted)) * 1.1;
  const X = (pos) => pad + ((pos - 1) / (nmax - 1)) * (c.width - 2 * pad);
  const Y = (v) => c.height - pad - (v / maxY) * (c.height - 2 * pad);

  ctx.strokeStyle = "#444";
  ctx.beginPath();
  ctx.moveTo(pad, pad / 2);
  ctx.lineTo(pad, c.height - pad);
  ctx.lineTo(c.width - pad / 2, c.height - pad);
  ctx.stroke();
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  for (let q = 1; q <= nmax; q++) ctx.fillText(`Z${q}`, X(q), c.height - pad + 16);

  const byN = new Map();
  pts.forEach((p) => byN.set(p.n, [...(byN.get(p.n) || []), p]));
  [...byN.entries()].forEach(([n, series], k) => {
    ctx.strokeStyle = ctx.fillStyle = COLORS[k % COLORS.length];
    ctx.setLineDash(series[0].exploratory ? [5, 4] : []);
    ctx.beginPath();
    series.forEach((p, i) => (i ? ctx.lineTo(X(p.position), Y(p.weighted)) : ctx.moveTo(X(p.position), Y(p.weighted))));
    ctx.stroke();
    series.forEach((p) => ctx.fillRect(X(p.position) - 3, Y(p.weighted) - 3, 6, 6));
    ctx.textAlign = "left";
    ctx.fillText(`n=${n}`, c.width - pad - 10, pad / 2 + 14 * k);
  });
  ctx.setLineDash([]);
}

await init();
$("graph").addEventListener("change", () => ($("edges").hidden = $("graph").value !== "custom"));
$("run-distance").addEventListener("click", runDistance);
$("run-sweep").addEventListener("click", runSweep);
$("run-profile").addEventListener("click", runProfile);
runDistance();
runProfile();
