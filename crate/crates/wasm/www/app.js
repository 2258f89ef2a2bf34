import init, { nfesOn, checkLaw, extrapolationTrace } from "./pkg/listsym_wasm.js";

const $ = (id) => document.getElementById(id);

const EXAMPLES = {
  fe: `[{"keep":[1,2],"output":[1,2,2]},
 {"keep":[2,3],"output":[2,2,3]},
 {"keep":[1,3],"output":[1,3]}]`,
  nfe: `{"input":[1,2],"output":[2,1,2,1]}`,
};

const INPUTS = { fe: "3,2,1,2", nfe: "5,6,7" };

function show(list) {
  return "[" + list.join(",") + "]";
}

function el(tag, text, cls) {
  const node = document.createElement(tag);
  if (text !== undefined) node.textContent = text;
  if (cls) node.className = cls;
  return node;
}

function table(head, rows) {
  const t = el("table");
  const tr = el("tr");
  head.forEach((h) => tr.append(el("th", h)));
  t.append(tr);
  rows.forEach(({ cells, cls }) => {
    const r = el("tr", undefined, cls);
    cells.forEach((c) => r.append(el("td", c)));
    t.append(r);
  });
  return t;
}

function run(out, body) {
  out.replaceChildren();
  try {
    body(out);
  } catch (err) {
    out.append(el("p", String(err), "error"));
  }
}

function enumerate() {
  run($("enum-out"), (out) => {
    const res = JSON.parse(nfesOn(Number($("enum-k").value), $("enum-input").value));
    out.append(el("p", `${res.count} terms`));
    out.append(
      table(
        ["term", "output"],
        res.terms.map((t) => ({ cells: [t.term, show(t.output)] })),
      ),
    );
  });
}

function check() {
  run($("check-out"), (out) => {
    const res = JSON.parse(
      checkLaw($("check-fn").value, $("check-law").value, Number($("check-a").value), Number($("check-l").value)),
    );
    const verdict = res.passed ? "PASS" : `FAIL (${res.witness_count} witnesses)`;
    out.append(el("p", `${res.report.function}, ${res.report.law}: ${verdict}`, res.passed ? "pass" : "fail"));
    if (!res.passed) {
      out.append(
        table(
          ["input", "transform", "transform(f x)", "f(transform x)"],
          res.report.witnesses.map((w) => ({
            cells: [show(w.input), describe(w.transform), show(w.lhs), show(w.rhs)],
          })),
        ),
      );
    }
  });
}

function describe(t) {
  if (t.kind === "filter") return `filter keep {${t.keep.join(",")}}`;
  if (t.kind === "map") return `map ${show(t.table)}`;
  return t.kind;
}

function label(v) {
  return typeof v === "object" ? `${v.value}#${v.index}` : String(v);
}

function extrapolate() {
  run($("ex-out"), (out) => {
    const mode = $("ex-mode").value;
    const res = JSON.parse(extrapolationTrace($("ex-examples").value, $("ex-input").value, mode));
    out.append(el("p", `f ${$("ex-input").value.trim()} = ${show(res.output)}  (method: ${res.method})`));
    const rounds = mode === "fe" ? res.rounds : res.tagged ? res.tagged.rounds : [];
    if (rounds && rounds.length) {
      out.append(
        table(
          ["round", "head scores", "winner"],
          rounds.map((r, i) => ({
            cells: [String(i), r.scores.map(([x, s]) => `${label(x)}:${s}`).join("  "), label(r.winner)],
          })),
        ),
      );
    }
  });
}

function resetExamples() {
  const mode = $("ex-mode").value;
  $("ex-examples").value = EXAMPLES[mode];
  $("ex-input").value = INPUTS[mode];
}

await init();
$("enum-run").onclick = enumerate;
$("check-run").onclick = check;
$("ex-run").onclick = extrapolate;
$("ex-mode").onchange = resetExamples;
resetExamples();
enumerate();
