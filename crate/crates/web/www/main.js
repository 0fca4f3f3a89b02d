import init, { bulk_curve, edge_curve, airy_pair } from "./pkg/unitary_density_web.js";

const $ = (id) => document.getElementById(id);
const canvas = $("plot");
const ctx = canvas.getContext("2d");

function draw(curve, xlabel) {
  const xs = curve.x, series = [
    [curve.limit, "#888"],
    [curve.exact, "#1f4e9c"],
    [curve.asymptotic, "#c0392b"],
  ];
  const W = canvas.width, H = canvas.height, pad = 40;
  let ymax = 0;
  for (const [ys] of series) for (const y of ys) ymax = Math.max(ymax, y);
  ymax *= 1.08;
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const sx = (x) => pad + (W - 2 * pad) * (x - x0) / (x1 - x0);
  const sy = (y) => H - pad - (H - 2 * pad) * y / ymax;

  ctx.clearRect(0, 0, W, H);
  ctx.strokeStyle = "#aaa";
  ctx.lineWidth = 1;
  ctx.strokeRect(pad, pad, W - 2 * pad, H - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px system-ui";
  ctx.fillText(x0.toFixed(2), pad, H - pad + 16);
  ctx.fillText(x1.toFixed(2), W - pad - 28, H - pad + 16);
  ctx.fillText(xlabel, W / 2, H - pad + 16);
  ctx.fillText(ymax.toFixed(3), 4, pad + 4);

  for (const [ys, colour] of series) {
    ctx.strokeStyle = colour;
    ctx.lineWidth = colour === "#888" ? 1 : 2;
    ctx.beginPath();
    ys.forEach((y, i) => (i ? ctx.lineTo(sx(xs[i]), sy(y)) : ctx.moveTo(sx(xs[i]), sy(y))));
    ctx.stroke();
  }
}

function update() {
  const ensemble = $("ensemble").value;
  const n = Number($("n").value);
  const alpha = Number($("alpha").value);
  $("n-out").textContent = n;
  $("alpha-out").textContent = alpha.toFixed(1);
  $("alpha").disabled = ensemble === "gue";
  try {
    const curve = $("view").value === "bulk"
      ? bulk_curve(ensemble, alpha, n, 400, 0.05)
      : edge_curve(ensemble, alpha, n, 400, -6, 3);
    draw(curve, $("view").value === "bulk" ? "x" : "ξ");
    $("err").textContent = curve.max_abs_error.toExponential(2);
    curve.free();
  } catch (e) {
    $("err").textContent = String(e);
  }
}

function updateAiry() {
  try {
    const [ai, aip] = airy_pair(Number($("xi").value));
    $("airy").textContent = `Ai = ${ai.toExponential(12)}, Ai' = ${aip.toExponential(12)}`;
  } catch (e) {
    $("airy").textContent = String(e);
  }
}

await init();
for (const id of ["ensemble", "n", "alpha", "view"]) $(id).addEventListener("input", update);
$("xi").addEventListener("input", updateAiry);
update();
updateAiry();
