import init, { gray, canonicalizeColoring, hopfStiefelTable } from "./pkg/parcol_web.js";

const $ = (id) => document.getElementById(id);

function palette(c) {
  const hue = (c * 137.508) % 360;
  return `hsl(${hue}, 65%, 45%)`;
}

function showError(el, err) {
  el.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(err);
  el.appendChild(p);
}

function drawGray(data) {
  const canvas = $("gray-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const n = data.n;
  const margin = 20;
  const baseline = canvas.height - 30;
  const step = (canvas.width - 2 * margin) / Math.max(n - 1, 1);
  const x = (i) => margin + i * step;
  for (const [u, v, c] of data.edges) {
    const mid = (x(u) + x(v)) / 2;
    const r = (x(v) - x(u)) / 2;
    ctx.strokeStyle = palette(c);
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ctx.arc(mid, baseline, r, Math.PI, 0);
    ctx.stroke();
  }
  ctx.fillStyle = "#222";
  for (let i = 0; i < n; i++) {
    ctx.beginPath();
    ctx.arc(x(i), baseline, n > 128 ? 1 : 3, 0, 2 * Math.PI);
    ctx.fill();
  }
  if (n <= 32) {
    ctx.font = "10px monospace";
    ctx.textAlign = "center";
    data.labels.forEach((l, i) => ctx.fillText(l, x(i), baseline + 16));
  }
}

function runGray() {
  const summary = $("gray-summary");
  try {
    const data = JSON.parse(gray(Number($("gray-n").value), Number($("gray-ell").value)));
    let text = `${data.num_colors} colors`;
    if (data.bounds) {
      text += `; bounds ${data.bounds.lower} < ${data.num_colors} < ${data.bounds.upper}`;
      const census = Object.entries(data.census).map(([k, c]) => `${k}:${c}`).join(" ");
      text += `; colors by largest coordinate ${census}`;
    } else {
      text += " (width above ceil(lg n), no census)";
    }
    summary.textContent = text;
    drawGray(data);
  } catch (err) {
    showError(summary, err);
  }
}

function drawGraph(canvas, data, colors, offsetX, title) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width / 2;
  const cx = offsetX + w / 2;
  const cy = canvas.height / 2 + 10;
  const r = Math.min(w, canvas.height) / 2 - 40;
  const pos = (v) => {
    const a = (2 * Math.PI * v) / data.n - Math.PI / 2;
    return [cx + r * Math.cos(a), cy + r * Math.sin(a)];
  };
  ctx.font = "13px system-ui";
  ctx.textAlign = "center";
  ctx.fillStyle = "#222";
  ctx.fillText(title, cx, 18);
  data.edges.forEach(([u, v], e) => {
    const [x1, y1] = pos(u);
    const [x2, y2] = pos(v);
    ctx.strokeStyle = palette(colors[e]);
    ctx.lineWidth = 2.5;
    ctx.beginPath();
    ctx.moveTo(x1, y1);
    ctx.lineTo(x2, y2);
    ctx.stroke();
    ctx.fillStyle = "#222";
    ctx.fillText(String(colors[e]), (x1 + x2) / 2 + 6, (y1 + y2) / 2 - 4);
  });
  for (let v = 0; v < data.n; v++) {
    const [x, y] = pos(v);
    ctx.fillStyle = "#fff";
    ctx.strokeStyle = "#222";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.arc(x, y, 9, 0, 2 * Math.PI);
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = "#222";
    ctx.fillText(String(v), x, y + 4);
  }
}

function runCanonicalize() {
  const summary = $("canon-summary");
  const canvas = $("canon-canvas");
  canvas.getContext("2d").clearRect(0, 0, canvas.width, canvas.height);
  try {
    const data = JSON.parse(canonicalizeColoring($("canon-graph").value, $("canon-colors").value));
    if (data.spec) {
      const merged = Object.entries(data.refinement_map).map(([c, s]) => `${c}→${s}`).join(" ");
      summary.textContent =
        `Strong parity coloring. Canonical form uses ${data.num_colors_star} colors (${merged}); ` +
        `vertex labels ${data.labeling.join(", ")}; cycle image dimension ${data.dim_cycle_space_image}.`;
      drawGraph(canvas, data, data.coloring, 0, "input");
      drawGraph(canvas, data, data.coloring_star, canvas.width / 2, "canonical");
    } else {
      const [u, v] = data.parity_walk_between;
      summary.textContent = `Not a strong parity coloring: an even walk joins ${u} and ${v}.`;
      drawGraph(canvas, data, data.coloring, 0, "input");
    }
  } catch (err) {
    showError(summary, err);
  }
}

function runTable() {
  const out = $("hs-table");
  try {
    const data = JSON.parse(hopfStiefelTable(Number($("hs-max").value)));
    const table = document.createElement("table");
    const head = table.insertRow();
    head.appendChild(document.createElement("th")).textContent = "s\\t";
    for (let t = 1; t <= data.max; t++) head.appendChild(document.createElement("th")).textContent = t;
    data.rows.forEach((row, i) => {
      const tr = table.insertRow();
      tr.appendChild(document.createElement("th")).textContent = i + 1;
      for (const value of row) tr.insertCell().textContent = value;
    });
    out.innerHTML = "";
    out.appendChild(table);
  } catch (err) {
    showError(out, err);
  }
}

await init();
$("gray-run").addEventListener("click", runGray);
$("canon-run").addEventListener("click", runCanonicalize);
$("hs-run").addEventListener("click", runTable);
runGray();
runCanonicalize();
runTable();
