// Demo driver: wires the control panel to the wasm module and renders line
// plots / heatmaps on a single canvas. No framework, no dependencies.

const TAU = 2 * Math.PI;

const SERIES = [
  { key: 1, label: "I_c/I_in", color: "#8a93a6" },
  { key: 2, label: "I_out_r/I_in", color: "#ff6b6b" },
  { key: 3, label: "I_out_l/I_in", color: "#57b2ff" },
  { key: 4, label: "I_total/I_in", color: "#68d391" },
  { key: 5, label: "absorption", color: "#c792ea", dash: [6, 4] },
];

const PRESETS = {
  fig2a: { view: "map", phi1: 0, mapX: "delta_p", mapY: "phi2", observable: "i_out_r" },
  fig2b: { view: "map", phi2: 0, mapX: "delta_p", mapY: "phi1", observable: "i_out_r" },
  fig3a: { view: "map", delta_p: -1, mapX: "phi1", mapY: "phi2", observable: "i_out_r" },
  fig3b: { view: "map", delta_p: 0, mapX: "phi1", mapY: "phi2", observable: "i_out_r" },
  fig3c: { view: "map", delta_p: 1, mapX: "phi1", mapY: "phi2", observable: "i_out_r" },
  fig4a: { view: "phase", phaseAxis: "phi2", phi1: 0.5 * Math.PI, delta_p: 0 },
  fig4b: { view: "phase", phaseAxis: "phi2", phi1: 0.5 * Math.PI, delta_p: 2 },
  fig4c: { view: "phase", phaseAxis: "phi2", phi1: 0.5 * Math.PI, delta_p: 4 },
  fig5a: { view: "phase", phaseAxis: "phi1", phi2: 0, delta_p: 0 },
  fig5b: { view: "phase", phaseAxis: "phi1", phi2: 0.5 * Math.PI, delta_p: 0 },
  fig5c: { view: "phase", phaseAxis: "phi1", phi2: Math.PI, delta_p: 0 },
};

const $ = (id) => document.getElementById(id);
const canvas = $("plot");
const ctx = canvas.getContext("2d");

let wasm = null;
let view = "spectrum";

function sliderValues() {
  return {
    phi1: parseFloat($("phi1").value) * Math.PI,
    phi2: parseFloat($("phi2").value) * Math.PI,
    delta_p: parseFloat($("delta_p").value),
    g_n: parseFloat($("g_n").value),
    omega1: parseFloat($("omega1").value),
    omega2: parseFloat($("omega2").value),
    omega_t: parseFloat($("omega_t").value),
    kappa: parseFloat($("kappa").value),
    gamma12: Math.pow(10, parseFloat($("gamma12").value)),
  };
}

function makeParams(v) {
  const p = new wasm.SimParams();
  p.phi1 = v.phi1;
  p.phi2 = v.phi2;
  p.g_n = v.g_n;
  p.omega1 = v.omega1;
  p.omega2 = v.omega2;
  p.omega_t = v.omega_t;
  p.kappa = v.kappa;
  p.gamma12 = v.gamma12;
  return p;
}

function refreshReadouts() {
  const v = sliderValues();
  $("phi1-val").textContent = ($("phi1").value * 1).toFixed(2) + "π";
  $("phi2-val").textContent = ($("phi2").value * 1).toFixed(2) + "π";
  $("delta_p-val").textContent = v.delta_p.toFixed(2);
  $("g_n-val").textContent = v.g_n.toFixed(2);
  $("omega1-val").textContent = v.omega1.toFixed(2);
  $("omega2-val").textContent = v.omega2.toFixed(2);
  $("omega_t-val").textContent = v.omega_t.toFixed(2);
  $("kappa-val").textContent = v.kappa.toFixed(2);
  $("gamma12-val").textContent = v.gamma12.toExponential(1);
}

// ---------------------------------------------------------------- plotting

const M = { left: 64, right: 24, top: 20, bottom: 46 };

function clear() {
  ctx.fillStyle = "#1a2129";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
}

function plotArea() {
  return {
    x: M.left,
    y: M.top,
    w: canvas.width - M.left - M.right,
    h: canvas.height - M.top - M.bottom,
  };
}

function niceTicks(lo, hi, n = 6) {
  const span = hi - lo;
  if (!(span > 0)) return [lo];
  const step0 = span / n;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const step = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => span / s <= n) || mag * 10;
  const ticks = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12; t += step) {
    ticks.push(Math.abs(t) < 1e-12 ? 0 : t);
  }
  return ticks;
}

function fmtTick(t) {
  if (t === 0) return "0";
  const a = Math.abs(t);
  if (a >= 100 || a < 0.01) return t.toExponential(0);
  return +t.toFixed(3) + "";
}

function drawAxes(area, xlo, xhi, ylo, yhi, xlabel, ylabel) {
  ctx.strokeStyle = "#2b3540";
  ctx.fillStyle = "#93a1ad";
  ctx.lineWidth = 1;
  ctx.font = "12px system-ui";

  for (const t of niceTicks(xlo, xhi, 8)) {
    const px = area.x + ((t - xlo) / (xhi - xlo)) * area.w;
    ctx.beginPath();
    ctx.moveTo(px, area.y);
    ctx.lineTo(px, area.y + area.h);
    ctx.stroke();
    ctx.textAlign = "center";
    ctx.fillText(fmtTick(t), px, area.y + area.h + 16);
  }
  for (const t of niceTicks(ylo, yhi, 6)) {
    const py = area.y + area.h - ((t - ylo) / (yhi - ylo)) * area.h;
    ctx.beginPath();
    ctx.moveTo(area.x, py);
    ctx.lineTo(area.x + area.w, py);
    ctx.stroke();
    ctx.textAlign = "right";
    ctx.fillText(fmtTick(t), area.x - 8, py + 4);
  }
  ctx.textAlign = "center";
  ctx.fillStyle = "#e8edf2";
  ctx.fillText(xlabel, area.x + area.w / 2, canvas.height - 10);
  ctx.save();
  ctx.translate(16, area.y + area.h / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(ylabel, 0, 0);
  ctx.restore();
}

function drawLines(data, n, xlabel) {
  const area = plotArea();
  const xs = [], cols = SERIES.map(() => []);
  for (let i = 0; i < n; i++) {
    xs.push(data[i * 6]);
    SERIES.forEach((s, j) => cols[j].push(data[i * 6 + s.key]));
  }
  const xlo = xs[0], xhi = xs[n - 1];
  let ylo = 0, yhi = 0;
  for (const col of cols) for (const v of col) if (isFinite(v)) yhi = Math.max(yhi, v);
  yhi = yhi * 1.08 + 1e-9;

  clear();
  drawAxes(area, xlo, xhi, ylo, yhi, xlabel, "intensity ratio");

  SERIES.forEach((s, j) => {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 1.8;
    ctx.setLineDash(s.dash || []);
    ctx.beginPath();
    let pen = false;
    for (let i = 0; i < n; i++) {
      const v = cols[j][i];
      if (!isFinite(v)) { pen = false; continue; }
      const px = area.x + ((xs[i] - xlo) / (xhi - xlo)) * area.w;
      const py = area.y + area.h - ((v - ylo) / (yhi - ylo)) * area.h;
      if (pen) ctx.lineTo(px, py); else { ctx.moveTo(px, py); pen = true; }
    }
    ctx.stroke();
  });
  ctx.setLineDash([]);

  // Legend.
  let lx = area.x + 12, ly = area.y + 10;
  ctx.font = "12px system-ui";
  for (const s of SERIES) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 2.5;
    ctx.setLineDash(s.dash || []);
    ctx.beginPath();
    ctx.moveTo(lx, ly + 4);
    ctx.lineTo(lx + 22, ly + 4);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = "#e8edf2";
    ctx.textAlign = "left";
    ctx.fillText(s.label, lx + 28, ly + 8);
    ly += 18;
  }
}

// Compact perceptual colormap (dark blue -> teal -> yellow).
function colormap(t) {
  const stops = [
    [13, 8, 135], [84, 2, 163], [139, 10, 165], [185, 50, 137],
    [219, 92, 104], [244, 136, 73], [254, 188, 43], [240, 249, 33],
  ];
  const x = Math.min(Math.max(t, 0), 1) * (stops.length - 1);
  const i = Math.min(Math.floor(x), stops.length - 2);
  const f = x - i;
  return stops[i].map((c, k) => Math.round(c + f * (stops[i + 1][k] - c)));
}

function drawMap(values, nx, ny, xlo, xhi, ylo, yhi, xlabel, ylabel, obsLabel) {
  const area = plotArea();
  area.w -= 64; // room for the colorbar

  let vmin = Infinity, vmax = -Infinity;
  for (const v of values) {
    if (isFinite(v)) { vmin = Math.min(vmin, v); vmax = Math.max(vmax, v); }
  }
  if (!isFinite(vmin)) { vmin = 0; vmax = 1; }
  if (vmax - vmin < 1e-15) vmax = vmin + 1e-15;

  clear();

  const img = new ImageData(nx, ny);
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      const v = values[j * nx + i];
      const k = ((ny - 1 - j) * nx + i) * 4; // canvas y grows downward
      if (isFinite(v)) {
        const [r, g, b] = colormap((v - vmin) / (vmax - vmin));
        img.data[k] = r; img.data[k + 1] = g; img.data[k + 2] = b; img.data[k + 3] = 255;
      } else {
        img.data[k + 3] = 0;
      }
    }
  }
  const off = document.createElement("canvas");
  off.width = nx; off.height = ny;
  off.getContext("2d").putImageData(img, 0, 0);
  ctx.imageSmoothingEnabled = true;
  ctx.drawImage(off, area.x, area.y, area.w, area.h);

  drawAxes(area, xlo, xhi, ylo, yhi, xlabel, ylabel);

  // Colorbar.
  const bx = area.x + area.w + 18, bw = 14;
  for (let j = 0; j < area.h; j++) {
    const [r, g, b] = colormap(1 - j / area.h);
    ctx.fillStyle = `rgb(${r},${g},${b})`;
    ctx.fillRect(bx, area.y + j, bw, 1.5);
  }
  ctx.strokeStyle = "#2b3540";
  ctx.strokeRect(bx, area.y, bw, area.h);
  ctx.fillStyle = "#e8edf2";
  ctx.textAlign = "left";
  ctx.font = "12px system-ui";
  ctx.fillText(fmtTick(vmax), bx + bw + 4, area.y + 10);
  ctx.fillText(fmtTick(vmin), bx + bw + 4, area.y + area.h);
  ctx.save();
  ctx.translate(bx + bw + 34, area.y + area.h / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.textAlign = "center";
  ctx.fillText(obsLabel, 0, 0);
  ctx.restore();
}

// ---------------------------------------------------------------- views

function axisRange(name) {
  return name === "delta_p" ? [-5, 5] : [0, TAU];
}

function axisLabel(name) {
  return { delta_p: "Δp / Γ", phi1: "φ1 (rad)", phi2: "φ2 (rad)" }[name];
}

function redraw() {
  if (!wasm) return;
  refreshReadouts();
  const v = sliderValues();
  const p = makeParams(v);
  const status = [];
  try {
    if (view === "spectrum") {
      const n = 401;
      const data = wasm.spectrum(p, -5, 5, n);
      drawLines(data, n, axisLabel("delta_p"));
      status.push(`spectrum at φ1=${(v.phi1 / Math.PI).toFixed(2)}π, φ2=${(v.phi2 / Math.PI).toFixed(2)}π`);
    } else if (view === "phase") {
      const axis = $("phase-axis").value;
      const n = 401;
      const data = wasm.phase_scan(p, axis, v.delta_p, 0, TAU, n);
      drawLines(data, n, axisLabel(axis));
      const fixed = axis === "phi1" ? `φ2=${(v.phi2 / Math.PI).toFixed(2)}π` : `φ1=${(v.phi1 / Math.PI).toFixed(2)}π`;
      status.push(`phase scan over ${axis} at Δp=${v.delta_p.toFixed(2)}, ${fixed}`);
    } else {
      const x = $("map-x").value, y = $("map-y").value, obs = $("observable").value;
      if (x === y) {
        status.push("map axes must differ");
      } else {
        const [xlo, xhi] = axisRange(x), [ylo, yhi] = axisRange(y);
        const nx = 161, ny = 161;
        const data = wasm.intensity_map(p, x, xlo, xhi, nx, y, ylo, yhi, ny, obs, v.delta_p);
        drawMap(data, nx, ny, xlo, xhi, ylo, yhi, axisLabel(x), axisLabel(y), obs);
        const pinned = [];
        if (x !== "delta_p" && y !== "delta_p") pinned.push(`Δp=${v.delta_p.toFixed(2)}`);
        if (x !== "phi1" && y !== "phi1") pinned.push(`φ1=${(v.phi1 / Math.PI).toFixed(2)}π`);
        if (x !== "phi2" && y !== "phi2") pinned.push(`φ2=${(v.phi2 / Math.PI).toFixed(2)}π`);
        status.push(`${obs} over ${x} × ${y} at ${pinned.join(", ")}`);
      }
    }
  } finally {
    p.free();
  }
  $("status").textContent = status.join(" · ");
}

function setView(name) {
  view = name;
  for (const id of ["spectrum", "phase", "map"]) {
    $("view-" + id).classList.toggle("active", id === name);
  }
  redraw();
}

function applyPreset(cfg) {
  if (cfg.phi1 !== undefined) $("phi1").value = (cfg.phi1 / Math.PI).toString();
  if (cfg.phi2 !== undefined) $("phi2").value = (cfg.phi2 / Math.PI).toString();
  if (cfg.delta_p !== undefined) $("delta_p").value = cfg.delta_p.toString();
  if (cfg.phaseAxis) $("phase-axis").value = cfg.phaseAxis;
  if (cfg.mapX) $("map-x").value = cfg.mapX;
  if (cfg.mapY) $("map-y").value = cfg.mapY;
  if (cfg.observable) $("observable").value = cfg.observable;
  setView(cfg.view);
}

function resetDefaults() {
  $("phi1").value = "0.5";
  $("phi2").value = "0";
  $("delta_p").value = "0";
  $("g_n").value = "1";
  $("omega1").value = "1";
  $("omega2").value = "1";
  $("omega_t").value = "1";
  $("kappa").value = "1";
  $("gamma12").value = "-3";
  redraw();
}

async function boot() {
  try {
    wasm = await import("./pkg/phase_cavity_wasm.js");
    await wasm.default();
  } catch (err) {
    console.error(err);
    document.getElementById("boot-error").style.display = "block";
    return;
  }

  for (const id of ["phi1", "phi2", "delta_p", "g_n", "omega1", "omega2", "omega_t", "kappa", "gamma12"]) {
    $(id).addEventListener("input", redraw);
  }
  for (const id of ["phase-axis", "map-x", "map-y", "observable"]) {
    $(id).addEventListener("change", redraw);
  }
  $("view-spectrum").addEventListener("click", () => setView("spectrum"));
  $("view-phase").addEventListener("click", () => setView("phase"));
  $("view-map").addEventListener("click", () => setView("map"));
  $("reset").addEventListener("click", resetDefaults);

  const presetBox = $("presets");
  for (const name of Object.keys(PRESETS)) {
    const b = document.createElement("button");
    b.textContent = name;
    b.addEventListener("click", () => applyPreset(PRESETS[name]));
    presetBox.appendChild(b);
  }

  redraw();
}

boot();
