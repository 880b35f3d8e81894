import init, { robustMargin, kCenter, distortionHistogram } from "./pkg/robustjl_web.js";

const COLORS = ["#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#ff7f0e"];
const SCALE = 20; // pixels per unit; the origin sits at the canvas center

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function toWorld(canvas, ev) {
  const r = canvas.getBoundingClientRect();
  return [(ev.clientX - r.left - canvas.width / 2) / SCALE, -(ev.clientY - r.top - canvas.height / 2) / SCALE];
}

function toPixel(canvas, [x, y]) {
  return [canvas.width / 2 + x * SCALE, canvas.height / 2 - y * SCALE];
}

function axes(ctx, canvas) {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#eee";
  ctx.beginPath();
  ctx.moveTo(canvas.width / 2, 0);
  ctx.lineTo(canvas.width / 2, canvas.height);
  ctx.moveTo(0, canvas.height / 2);
  ctx.lineTo(canvas.width, canvas.height / 2);
  ctx.stroke();
}

function dot(ctx, canvas, p, color, r = 3.5) {
  const [px, py] = toPixel(canvas, p);
  ctx.fillStyle = color;
  ctx.beginPath();
  ctx.arc(px, py, r, 0, 2 * Math.PI);
  ctx.fill();
}

function gaussian() {
  const u = 1 - Math.random();
  return Math.sqrt(-2 * Math.log(u)) * Math.cos(2 * Math.PI * Math.random());
}

function board(id, solve, randomize) {
  const canvas = $(id);
  const ctx = canvas.getContext("2d");
  const state = { points: [] };
  const redraw = () => {
    axes(ctx, canvas);
    state.points.forEach((p) => dot(ctx, canvas, p, "#555"));
  };
  canvas.addEventListener("click", (ev) => {
    if (ev.shiftKey) state.points = [];
    else state.points.push(toWorld(canvas, ev));
    redraw();
  });
  return {
    canvas,
    ctx,
    state,
    redraw,
    solve: () => solve(canvas, ctx, state, redraw),
    randomize: () => {
      state.points = randomize();
      redraw();
      solve(canvas, ctx, state, redraw);
    },
  };
}

function report(id, text) {
  $(id).textContent = text;
}

function solveMargin(canvas, ctx, state, redraw) {
  redraw();
  if (state.points.length < 2) return report("m-out", "add at least two points");
  let res;
  try {
    res = JSON.parse(robustMargin(JSON.stringify(state.points), num("m-gamma"), num("m-eps")));
  } catch (e) {
    return report("m-out", String(e.message ?? e));
  }
  const inl = new Set(res.inliers);
  const support = new Set(res.support);
  state.points.forEach((p, i) => dot(ctx, canvas, p, inl.has(i) ? "#1f77b4" : "#d62728", support.has(i) ? 6 : 3.5));
  // boundary line <n, x> = width, drawn across the canvas
  const [nx, ny] = res.normal;
  const base = [nx * res.width, ny * res.width];
  const far = 50;
  const a = toPixel(canvas, [base[0] - ny * far, base[1] + nx * far]);
  const b = toPixel(canvas, [base[0] + ny * far, base[1] - nx * far]);
  ctx.strokeStyle = "#ff7f0e";
  ctx.beginPath();
  ctx.moveTo(...a);
  ctx.lineTo(...b);
  ctx.stroke();
  ctx.setLineDash([4, 4]);
  ctx.beginPath();
  ctx.moveTo(...toPixel(canvas, [0, 0]));
  ctx.lineTo(...toPixel(canvas, base));
  ctx.stroke();
  ctx.setLineDash([]);
  report("m-out", `width ${res.width.toFixed(3)}, ${state.points.length - inl.size} outliers, ${support.size} support points, ${res.iterations} Gilbert iterations`);
}

function solveKCenter(canvas, ctx, state, redraw) {
  redraw();
  if (state.points.length < 1) return report("k-out", "add points first");
  let res;
  try {
    res = JSON.parse(kCenter(JSON.stringify(state.points), num("k-k"), num("k-gamma"), 0.1));
  } catch (e) {
    return report("k-out", String(e.message ?? e));
  }
  state.points.forEach((p, i) => {
    const c = res.assignment[i];
    dot(ctx, canvas, p, c < 0 ? "#d62728" : COLORS[c % COLORS.length]);
  });
  res.centers.forEach((c, j) => {
    const [px, py] = toPixel(canvas, c);
    ctx.strokeStyle = COLORS[j % COLORS.length];
    ctx.beginPath();
    ctx.arc(px, py, res.radius * SCALE, 0, 2 * Math.PI);
    ctx.stroke();
    dot(ctx, canvas, c, "#000", 2.5);
  });
  const outliers = res.assignment.filter((a) => a < 0).length;
  report("k-out", `${res.centers.length} centers, radius ${res.radius.toFixed(3)}, ${outliers} outliers`);
}

function drawHistogram() {
  const canvas = $("hist");
  const ctx = canvas.getContext("2d");
  let res;
  try {
    res = JSON.parse(distortionHistogram($("j-var").value, num("j-n"), num("j-d"), num("j-t"), num("j-eps"), BigInt(num("j-seed"))));
  } catch (e) {
    return report("j-out", String(e.message ?? e));
  }
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const top = Math.max(...res.counts, 1);
  const w = canvas.width / res.counts.length;
  const binWidth = res.edges.length > 1 ? res.edges[1] - res.edges[0] : 1;
  res.counts.forEach((c, i) => {
    const h = (c / top) * (canvas.height - 20);
    ctx.fillStyle = res.edges[i] + binWidth <= num("j-eps") ? "#1f77b4" : "#d62728";
    ctx.fillRect(i * w + 1, canvas.height - h, w - 2, h);
  });
  report(
    "j-out",
    `bins of width ${binWidth.toFixed(3)}; max ${res.max.toFixed(3)}, mean ${res.mean.toFixed(3)}, ` +
      `${(100 * res.fractionWithin).toFixed(1)}% of pairs within eps`,
  );
}

await init();

const margin = board("margin", solveMargin, () => {
  const pts = Array.from({ length: 40 }, () => [5 + gaussian(), 4 + gaussian()]);
  for (let i = 0; i < 4; i++) pts.push([-3 * Math.random(), -3 * Math.random()]);
  return pts;
});
const kc = board("kc", solveKCenter, () => {
  const centers = [[-5, 4], [5, 3], [0, -5]];
  const pts = centers.flatMap(([cx, cy]) => Array.from({ length: 25 }, () => [cx + 0.8 * gaussian(), cy + 0.8 * gaussian()]));
  for (let i = 0; i < 4; i++) pts.push([20 * Math.random() - 10, 20 * Math.random() - 10]);
  return pts;
});

$("m-run").onclick = margin.solve;
$("m-rand").onclick = margin.randomize;
$("k-run").onclick = kc.solve;
$("k-rand").onclick = kc.randomize;
$("j-run").onclick = drawHistogram;
margin.randomize();
kc.randomize();
drawHistogram();
