import init, { residue, triangle, secant } from "./pkg/multising_web.js";

const $ = (id) => document.getElementById(id);

function show(el, fn) {
  el.classList.remove("error");
  try {
    fn();
  } catch (e) {
    el.classList.add("error");
    el.textContent = String(e);
  }
}

function runResidue() {
  const out = $("res-out");
  show(out, () => {
    const r = JSON.parse(residue($("res-multi").value, Number($("res-ell").value)));
    out.textContent = `R[${r.multi}] at ell = ${r.ell} (${r.terms} terms, ${r.provenance})\n\n${r.text}\n\nLaTeX: ${r.latex}`;
  });
}

function runTriangle() {
  const out = $("tri-out");
  show(out, () => {
    const rows = JSON.parse(triangle(Number($("tri-rows").value)));
    const table = document.createElement("table");
    table.className = "tri";
    const width = rows.length;
    for (const row of rows) {
      const tr = table.insertRow();
      const pad = width - row.length;
      for (let i = 0; i < pad; i++) tr.insertCell();
      row.forEach((x, i) => {
        tr.insertCell().textContent = x;
        if (i < row.length - 1) tr.insertCell();
      });
    }
    out.replaceChildren(table);
  });
}

// chi inputs are rebuilt from the indices the count actually uses
function chiValues() {
  const vals = {};
  for (const input of $("chi-inputs").querySelectorAll("input")) {
    if (input.value.trim() !== "") vals[input.dataset.key] = input.value.trim();
  }
  return vals;
}

function runSecant(preset) {
  const out = $("sec-out");
  show(out, () => {
    const a = Number($("sec-a").value);
    const base = JSON.parse(secant(a, ""));
    const box = $("chi-inputs");
    if (box.dataset.a !== String(a)) {
      box.dataset.a = String(a);
      box.replaceChildren(
        ...base.indices.map((key) => {
          const label = document.createElement("label");
          label.textContent = `chi${key} `;
          const input = document.createElement("input");
          input.size = 8;
          input.dataset.key = key;
          label.append(input);
          return label;
        }),
      );
    }
    if (preset) {
      for (const input of box.querySelectorAll("input")) input.value = preset[input.dataset.key] ?? "";
    }
    const vals = chiValues();
    let text = `4!N_${a} = ${base.text}`;
    if (Object.keys(vals).length === base.indices.length) {
      const r = JSON.parse(secant(a, JSON.stringify(vals)));
      text += `\n\nN_${a} = ${r.value}`;
    } else {
      text += "\n\nFill in every chi value to evaluate the count.";
    }
    out.textContent = text;
  });
}

await init();
$("status").textContent = "Ready. All arithmetic is exact.";
$("res-go").onclick = runResidue;
$("tri-go").onclick = runTriangle;
$("sec-go").onclick = () => runSecant(null);
$("sec-rnc").onclick = () => {
  $("sec-a").value = "1";
  runSecant({ "(0)": "6", "(1)": "40" });
};
runResidue();
runTriangle();
