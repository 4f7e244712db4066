import init, { reducts_json, squares_json, reduce_step, square_free_count } from "./pkg/sqfr_wasm.js";

const $ = (id) => document.getElementById(id);
let current = "";

function alphabet() {
  return $("alphabet").value;
}

function highlight(word, sq) {
  const el = $("current");
  el.textContent = "";
  if (!sq) {
    el.textContent = word;
    return;
  }
  const a = sq.start, b = sq.start + sq.period, c = sq.start + 2 * sq.period;
  const first = document.createElement("mark");
  const second = document.createElement("mark");
  second.className = "second";
  first.textContent = word.slice(a, b);
  second.textContent = word.slice(b, c);
  el.append(word.slice(0, a), first, second, word.slice(c));
}

function show(word) {
  current = word;
  const res = JSON.parse(squares_json(word, alphabet()));
  const list = $("squares");
  list.textContent = "";
  if (res.error) {
    $("status").textContent = res.error;
    $("status").className = "error";
    highlight(word, null);
    return;
  }
  highlight(word, null);
  $("status").className = "";
  $("status").textContent = res.square_free
    ? "square-free: this is a reduct"
    : `${res.squares.length} square occurrences; pick one to reduce`;
  for (const sq of res.squares) {
    const li = document.createElement("li");
    const btn = document.createElement("button");
    btn.textContent = "reduce";
    btn.onclick = () => {
      const next = JSON.parse(reduce_step(current, alphabet(), sq.start, sq.period));
      if (next.error) {
        $("status").textContent = next.error;
      } else {
        show(next.word);
      }
    };
    li.append(btn, `${word.slice(sq.start, sq.start + sq.period)}² at ${sq.start}`);
    li.onmouseenter = () => highlight(word, sq);
    li.onmouseleave = () => highlight(word, null);
    list.append(li);
  }
}

function allReducts() {
  const res = JSON.parse(reducts_json($("word").value.trim(), alphabet()));
  const list = $("reducts");
  list.textContent = "";
  if (res.error) {
    $("summary").textContent = res.error;
    $("summary").className = "error";
    return;
  }
  $("summary").className = "";
  const partial = res.truncated ? " (search limit reached, list incomplete)" : "";
  $("summary").textContent = `${res.count} reducts, ${res.explored} words explored${partial}`;
  for (const r of res.reducts) {
    const li = document.createElement("li");
    li.textContent = r;
    list.append(li);
  }
}

function count() {
  const res = JSON.parse(square_free_count(Number($("k").value), Number($("n").value)));
  $("counted").textContent = res.error ? res.error : `${res.count} square-free words`;
}

await init();
$("word").addEventListener("input", () => show($("word").value.trim()));
$("alphabet").addEventListener("input", () => show($("word").value.trim()));
$("reset").onclick = () => show($("word").value.trim());
$("all").onclick = allReducts;
$("count").onclick = count;
show($("word").value.trim());
