import init, { HexGame, coveringHeatmap, spernerTriangle, catalogNames } from "./pkg/hexpoint_wasm.js";

const $ = (id) => document.getElementById(id);

function report(el, text, isError = false) {
  el.textContent = text;
  el.className = isError ? "status error" : "status";
}

// ---- hex ------------------------------------------------------------------

// Lattice (z1, z2) to screen. Rows shift left by half a cell per step north,
// so the six neighbours (+-1,0), (0,+-1), (1,1), (-1,-1) are the touching hexagons.
const hex = { game: null, k: 3, size: 0, ox: 0, oy: 0, overlay: null };

function hexCenter(z1, z2) {
  const w = Math.sqrt(3) * hex.size;
  return [hex.ox + (z1 - 1) * w - (z2 - 1) * w / 2, hex.oy - (z2 - 1) * 1.5 * hex.size];
}

function hexPath(ctx, cx, cy, r) {
  ctx.beginPath();
  for (let i = 0; i < 6; i++) {
    const a = Math.PI / 6 + i * Math.PI / 3;
    ctx.lineTo(cx + r * Math.cos(a), cy + r * Math.sin(a));
  }
  ctx.closePath();
}

function layoutHex(canvas, k) {
  const byWidth = canvas.width / (Math.sqrt(3) * (1.5 * k + 1));
  const byHeight = canvas.height / (1.5 * k + 1.5);
  hex.size = Math.min(byWidth, byHeight);
  const w = Math.sqrt(3) * hex.size;
  hex.ox = (k - 1) * w / 2 + w;
  hex.oy = canvas.height - 1.2 * hex.size;
}

function drawHex(board) {
  const canvas = $("hex-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const k = board.k;
  const fill = { ".": "#f3f3f3", H: "#e45b5b", V: "#4a7fd6" };
  const onPath = new Set(board.path.map((c) => `${c.z1},${c.z2}`));
  for (let z2 = 1; z2 <= k; z2++) {
    for (let z1 = 1; z1 <= k; z1++) {
      const [cx, cy] = hexCenter(z1, z2);
      hexPath(ctx, cx, cy, hex.size * 0.97);
      ctx.fillStyle = fill[board.rows[z2 - 1][z1 - 1]];
      ctx.fill();
      ctx.lineWidth = onPath.has(`${z1},${z2}`) ? 3 : 1;
      ctx.strokeStyle = onPath.has(`${z1},${z2}`) ? "#222" : "#999";
      ctx.stroke();
    }
  }
  if (hex.overlay) drawInterface(ctx, hex.overlay);
}

function drawInterface(ctx, view) {
  ctx.lineWidth = 1;
  ctx.strokeStyle = "rgba(0,0,0,0.25)";
  for (const [a, b] of view.edges) {
    const [x1, y1] = hexCenter(view.nodes[a].x, view.nodes[a].y);
    const [x2, y2] = hexCenter(view.nodes[b].x, view.nodes[b].y);
    ctx.beginPath();
    ctx.moveTo(x1, y1);
    ctx.lineTo(x2, y2);
    ctx.stroke();
  }
  const colours = ["#111", "#0a8a3a"];
  view.paths.forEach((path, i) => {
    ctx.lineWidth = 3;
    ctx.strokeStyle = colours[i];
    ctx.beginPath();
    for (const id of path) ctx.lineTo(...hexCenter(view.nodes[id].x, view.nodes[id].y));
    ctx.stroke();
  });
  for (const n of view.nodes) {
    if (!n.boundary) continue;
    const [x, y] = hexCenter(n.x, n.y);
    ctx.fillStyle = "#111";
    ctx.beginPath();
    ctx.arc(x, y, 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function newGame() {
  const k = Number($("hex-k").value);
  try {
    hex.game = new HexGame(k, $("hex-solver").checked);
  } catch (e) {
    report($("hex-status"), String(e.message ?? e), true);
    return;
  }
  hex.k = k;
  hex.overlay = null;
  layoutHex($("hex-canvas"), k);
  drawHex(JSON.parse(hex.game.state()));
  report($("hex-status"), "H to move");
}

function pickCell(ev) {
  const rect = ev.target.getBoundingClientRect();
  const x = ev.clientX - rect.left;
  const y = ev.clientY - rect.top;
  let best = null;
  for (let z2 = 1; z2 <= hex.k; z2++) {
    for (let z1 = 1; z1 <= hex.k; z1++) {
      const [cx, cy] = hexCenter(z1, z2);
      const d = Math.hypot(cx - x, cy - y);
      if (d < hex.size && (!best || d < best.d)) best = { z1, z2, d };
    }
  }
  return best;
}

function onHexClick(ev) {
  if (!hex.game) return;
  const cell = pickCell(ev);
  if (!cell) return;
  let reply;
  try {
    reply = JSON.parse(hex.game.play(cell.z1, cell.z2));
  } catch (e) {
    report($("hex-status"), String(e.message ?? e), true);
    return;
  }
  const board = reply.board;
  let text = `you played (${cell.z1},${cell.z2})`;
  if (reply.solverMove) text += `, solver replied (${reply.solverMove.z1},${reply.solverMove.z2})`;
  if (board.winner) {
    hex.overlay = JSON.parse(hex.game.interface());
    text += `\n${board.winner} wins; the path from u1 ends at the ${board.winner === "V" ? "u2" : "u4"} corner`;
  } else {
    text += `\n${board.toMove} to move`;
  }
  drawHex(board);
  report($("hex-status"), text);
}

// ---- covering sets ----------------------------------------------------------

function drawCovering() {
  const canvas = $("cover-canvas");
  const ctx = canvas.getContext("2d");
  let view;
  try {
    view = JSON.parse(coveringHeatmap($("cover-map").value, Number($("cover-k").value), Number($("cover-eps").value)));
  } catch (e) {
    report($("cover-status"), String(e.message ?? e), true);
    return;
  }
  const k = view.k;
  const s = canvas.width / k;
  const fill = { "H+": "#f4a6a6", "H-": "#f7d08a", "V+": "#9cc3f0", "V-": "#a8dcb0", ".": "#ffffff" };
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (let z2 = 1; z2 <= k; z2++) {
    for (let z1 = 1; z1 <= k; z1++) {
      ctx.fillStyle = fill[view.rows[z2 - 1][z1 - 1]];
      ctx.fillRect((z1 - 1) * s, canvas.height - z2 * s, s, s);
    }
  }
  let text = `H+ ${view.counts.hplus}  H- ${view.counts.hminus}  V+ ${view.counts.vplus}  V- ${view.counts.vminus}  uncovered ${view.counts.uncovered}`;
  if (view.best) {
    const [x, y] = view.best.point;
    ctx.strokeStyle = "#000";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc((x * k - 0.5) * s, canvas.height - (y * k - 0.5) * s, Math.max(s, 6), 0, 2 * Math.PI);
    ctx.stroke();
    text += `\nbest uncovered point (${x.toFixed(4)}, ${y.toFixed(4)}), residual ${view.best.residual.toExponential(3)}`;
  } else {
    text += "\nevery lattice point is covered; refine k or raise eps";
  }
  report($("cover-status"), text);
}

// ---- sperner ------------------------------------------------------------------

function drawSperner() {
  const canvas = $("sp-canvas");
  const ctx = canvas.getContext("2d");
  let view;
  try {
    view = JSON.parse(spernerTriangle($("sp-map").value, Number($("sp-n").value)));
  } catch (e) {
    report($("sp-status"), String(e.message ?? e), true);
    return;
  }
  const pad = 20;
  const side = canvas.width - 2 * pad;
  const corners = [
    [pad, canvas.height - pad],
    [pad + side, canvas.height - pad],
    [pad + side / 2, canvas.height - pad - side * Math.sqrt(3) / 2],
  ];
  const at = (l) => [0, 1].map((j) => l[0] * corners[0][j] + l[1] * corners[1][j] + l[2] * corners[2][j]);
  const colours = ["#e45b5b", "#4a7fd6", "#3aa35a"];
  const complete = new Set(view.complete);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  view.cells.forEach((cell, id) => {
    ctx.beginPath();
    for (const v of cell) ctx.lineTo(...at(view.vertices[v].point));
    ctx.closePath();
    ctx.fillStyle = complete.has(id) ? "#ffe27a" : "#fff";
    ctx.fill();
    ctx.strokeStyle = "#bbb";
    ctx.lineWidth = 1;
    ctx.stroke();
  });
  const r = Math.max(2, Math.min(6, 120 / view.n));
  for (const v of view.vertices) {
    ctx.fillStyle = colours[v.label];
    ctx.beginPath();
    ctx.arc(...at(v.point), r, 0, 2 * Math.PI);
    ctx.fill();
  }
  report($("sp-status"), `${view.cells.length} cells, ${view.complete.length} completely labeled`);
}

function fillList(id, names) {
  $(id).innerHTML = names.map((n) => `<option value="${n}">`).join("");
}

async function main() {
  await init();
  fillList("square-maps", catalogNames("square"));
  fillList("triangle-maps", catalogNames("triangle"));
  $("hex-new").addEventListener("click", newGame);
  $("hex-canvas").addEventListener("click", onHexClick);
  $("cover-run").addEventListener("click", drawCovering);
  $("sp-run").addEventListener("click", drawSperner);
  newGame();
  drawCovering();
  drawSperner();
}

main();
