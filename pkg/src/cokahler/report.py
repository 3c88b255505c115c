"""Input parsing, the end-to-end pipeline, report rendering and the built-in corpus."""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Any

from . import samples
from .errors import CorpusMismatchError, ParseError, UnknownCorpusError, ValidationError
from .exact_linalg import ExactMatrix, determinant, matrix_order
from .exterior_algebra import hard_lefschetz_check, kahler_form, standard_omega
from .group_action import (
    invariant_kahler_class,
    invariant_summary,
    molien_invariant_dim,
    omega_injectivity_check,
    projector_is_idempotent,
    projector_rank,
)
from .mapping_torus import (
    b1_parity_check,
    betti_numbers,
    eigenvalue_one_parity_check,
    monotonicity_check,
    poincare_duality_check,
    symplectic_pairing,
    wang_betti_oracle,
)
from .pi1_homology import (
    bundle_triviality,
    cover_data,
    first_homology,
    non_product_certificate,
    presentation,
    product_subgroup,
    structure_group,
)

# name -> statement the check instantiates
CHECKS: dict[str, str] = {
    "oracle_agreement": "Betti numbers from invariant fiber cohomology agree with the Wang sequence",
    "invariant_oracles": "fixed-space dimension = Molien trace average = rank of the averaging projector",
    "monotonicity": "co-Kahler Betti numbers increase to the middle: b_1 <= ... <= b_n = b_(n+1)",
    "b1_parity": "the first Betti number of a compact co-Kahler manifold is odd",
    "poincare_duality": "Poincare duality of the closed orientable mapping torus: b_s = b_(2n+1-s)",
    "hard_lefschetz": "Hard Lefschetz: omega^(n-j) maps H^j isomorphically onto H^(2n-j)",
    "omega_injectivity": "cup with the invariant Kahler class is injective on invariant classes",
    "eigenvalue_parity": "symplectic eigenvalue theorem: +1 has even multiplicity on H^1",
}

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not_applicable"

_ALLOWED_KEYS = {"n", "matrix", "omega", "checks"}


@dataclass(frozen=True)
class InputSpec:
    n: int
    matrix: tuple[tuple[int, ...], ...]
    omega: tuple[tuple[int, ...], ...] | None = None
    checks: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "matrix": [list(r) for r in self.matrix],
            "omega": None if self.omega is None else [list(r) for r in self.omega],
            "checks": None if self.checks is None else list(self.checks),
        }


def _int_matrix(value, name: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise ParseError(f"field '{name}': expected a list of integer rows")
    for i, row in enumerate(value):
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"field '{name}': entry [{i}][{j}] = {x!r} is not an integer")
    return tuple(tuple(r) for r in value)


def _check_square(mat, size: int, name: str) -> None:
    if len(mat) != size or any(len(r) != size for r in mat):
        shape = f"{len(mat)}x{sorted({len(r) for r in mat})}"
        raise ValidationError(f"field '{name}': must be square of size {size} (2n), got {shape}")


def parse_omega(value) -> tuple[tuple[int, ...], ...]:
    omega = _int_matrix(value, "omega")
    M = ExactMatrix(omega) if omega else None
    if M is None or not M.is_square:
        raise ValidationError("field 'omega': must be a square matrix")
    if M != -M.T:
        raise ValidationError("field 'omega': must be skew-symmetric")
    if determinant(M) == 0:
        raise ValidationError("field 'omega': must have nonzero determinant")
    return omega


def spec_from_dict(doc: Any) -> InputSpec:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    extra = set(doc) - _ALLOWED_KEYS
    if extra:
        raise ValidationError(f"unknown field(s): {', '.join(sorted(extra))}")
    for key in ("n", "matrix"):
        if key not in doc:
            raise ParseError(f"missing required field '{key}'")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError(f"field 'n': expected an integer, got {n!r}")
    if n < 1:
        raise ValidationError("field 'n': must be a positive integer")
    matrix = _int_matrix(doc["matrix"], "matrix")
    _check_square(matrix, 2 * n, "matrix")
    omega = None
    if doc.get("omega") is not None:
        omega = parse_omega(doc["omega"])
        _check_square(omega, 2 * n, "omega")
    checks = doc.get("checks")
    if checks is not None:
        if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
            raise ParseError("field 'checks': expected a list of check names")
        unknown = [c for c in checks if c not in CHECKS]
        if unknown:
            raise ValidationError(f"field 'checks': unknown check(s) {unknown}; known: {list(CHECKS)}")
        checks = tuple(dict.fromkeys(checks))
    return InputSpec(n, matrix, omega, checks)


def parse_input(text: str) -> InputSpec:
    """Parse a JSON input document into a validated InputSpec."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return spec_from_dict(doc)


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

@dataclass
class Report:
    input: dict
    order: int | str
    invariant_betti: list[int] | None
    betti: list[int] | None
    wang_betti: list[int]
    first_homology: dict
    cover: dict | None
    product_subgroup: dict | None
    presentation: dict
    structure_group: str
    bundle_trivial: bool
    omega_bar: list[list[str]] | None
    certificate: dict | None
    checks: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(**d)

    @property
    def failed_checks(self) -> list[str]:
        return [k for k, v in self.checks.items() if v["status"] == FAIL]


def _check(name: str, ok: bool | None, **details) -> dict:
    status = NOT_APPLICABLE if ok is None else PASS if ok else FAIL
    return {"status": status, "theorem": CHECKS[name], "details": details}


def run_pipeline(spec: InputSpec) -> Report:
    """Compute every invariant and run the requested checks.

    Infinite-order monodromy gives a partial report: the group-theoretic data
    and the Wang-sequence Betti numbers are filled in, everything that needs
    the finite cover is None or not_applicable.
    """
    A = ExactMatrix(spec.matrix)
    n = spec.n
    wanted = spec.checks if spec.checks is not None else tuple(CHECKS)
    order = matrix_order(A)
    h1 = first_homology(A)
    pres = presentation(A)
    wang = wang_betti_oracle(A)
    omega = kahler_form(ExactMatrix(spec.omega)) if spec.omega is not None else standard_omega(n)
    checks: dict[str, dict] = {}

    def want(name):
        return name in wanted

    if want("hard_lefschetz"):
        hl = hard_lefschetz_check(standard_omega(n), n)
        checks["hard_lefschetz"] = _check("hard_lefschetz", hl.ok,
                                          ranks=[list(hl.ranks[j]) for j in sorted(hl.ranks)])

    common = dict(
        input=spec.to_dict(),
        wang_betti=list(wang),
        first_homology={"rank": h1.rank, "torsion": list(h1.torsion)},
        presentation={"generators": list(pres.generators), "relations": pres.relations()},
        structure_group=str(structure_group(A)),
        bundle_trivial=bundle_triviality(A),
    )

    if not order.is_finite:
        for name in wanted:
            if name == "poincare_duality" and determinant(A) == 1:
                checks[name] = _check(name, poincare_duality_check(wang), betti=list(wang))
            elif name not in checks:
                checks[name] = _check(name, None)
        return Report(order="infinite", invariant_betti=None, betti=None, cover=None,
                      product_subgroup=None, omega_bar=None, certificate=None,
                      checks=_ordered(checks, wanted), **common)

    summary = invariant_summary(A)
    omega_bar = invariant_kahler_class(A, omega)
    b = betti_numbers(A, omega_bar)
    cert = non_product_certificate(A, b)
    cover = cover_data(A)
    sub = product_subgroup(A)

    if want("oracle_agreement"):
        checks["oracle_agreement"] = _check("oracle_agreement", tuple(b) == tuple(wang),
                                            formula=list(b), wang=list(wang))
    if want("invariant_oracles"):
        rows = []
        ok = True
        for k, space in enumerate(summary.spaces):
            mol = molien_invariant_dim(A, k)
            pr = projector_rank(A, k)
            idem = projector_is_idempotent(A, k)
            rows.append([k, space.dim, mol, pr])
            ok = ok and space.dim == mol == pr and idem
        checks["invariant_oracles"] = _check("invariant_oracles", ok,
                                             degree_kernel_molien_projector=rows)
    if want("monotonicity"):
        checks["monotonicity"] = _check("monotonicity", monotonicity_check(b, n), betti=list(b))
    if want("b1_parity"):
        checks["b1_parity"] = _check("b1_parity", b1_parity_check(b), b1=b[1])
    if want("poincare_duality"):
        checks["poincare_duality"] = _check("poincare_duality", poincare_duality_check(b),
                                            betti=list(b))
    if want("omega_injectivity"):
        inj = omega_injectivity_check(A, omega_bar, n)
        checks["omega_injectivity"] = _check(
            "omega_injectivity", inj.ok,
            degree_rank_source_dim=[[s, *inj.degrees[s]] for s in sorted(inj.degrees)])
    if want("eigenvalue_parity"):
        par = eigenvalue_one_parity_check(A, symplectic_pairing(omega_bar, n))
        checks["eigenvalue_parity"] = _check("eigenvalue_parity", par.ok,
                                             pairing_preserved=par.preserved,
                                             multiplicity=par.multiplicity)

    return Report(
        order=order.order,
        invariant_betti=list(summary.dims),
        betti=list(b),
        cover=asdict(cover),
        product_subgroup={"index": sub.index, "quotient": sub.quotient,
                          "circle_generator": sub.circle_generator,
                          "lattice_rank": sub.lattice_rank},
        omega_bar=[[str(x) for x in row] for row in omega_bar.matrix.rows],
        certificate={"kind": cert.kind, "rule": cert.rule, "torsion": list(cert.torsion)},
        checks=_ordered(checks, wanted),
        **common,
    )


def _ordered(checks: dict, wanted) -> dict:
    return {k: checks[k] for k in CHECKS if k in wanted and k in checks}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _certificate_text(cert: dict | None) -> str:
    if cert is None:
        return "not applicable (infinite order monodromy)"
    if cert["kind"] == "TrivialProduct":
        return "trivial product (fiber x S^1)"
    if cert["kind"] == "NotAProduct":
        rule = {"dim3-aspherical": "dim-3 rule", "solvable-perfect": "solvable-perfect rule"}[cert["rule"]]
        return f"NOT a global product ({rule})"
    tors = cert["torsion"]
    return "unknown" + (f" (H_1 torsion {tors})" if tors else "")


def _h1_text(h1: dict) -> str:
    parts = (["Z" if h1["rank"] == 1 else f"Z^{h1['rank']}"] if h1["rank"] else [])
    parts += [f"Z/{t}" for t in h1["torsion"]]
    return " + ".join(parts) or "0"


def render(report: Report, format: str = "json") -> str:
    if format == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    inp = report.input
    lines = [
        f"mapping torus of T^{2 * inp['n']} with monodromy A = {inp['matrix']}",
        f"order m = {report.order}",
        f"structure group: {report.structure_group}",
    ]
    if report.invariant_betti is not None:
        lines.append("invariant bbar = " + " ".join(map(str, report.invariant_betti)))
        lines.append("b = " + " ".join(map(str, report.betti)))
    lines.append("Wang b = " + " ".join(map(str, report.wang_betti)))
    lines.append(f"H_1(M; Z) = {_h1_text(report.first_homology)}")
    if report.cover is not None:
        c = report.cover
        lines.append(f"finite cover: {c['total_space']} -> M of degree {c['degree']}, "
                     f"deck group {c['deck_group']}, circle winds {c['winding']} times")
        lines.append(f"product subgroup Z^{report.product_subgroup['lattice_rank']} x Z "
                     f"of index {report.product_subgroup['index']}, "
                     f"quotient {report.product_subgroup['quotient']}")
    lines.append(f"bundle over S^1 trivial: {'yes' if report.bundle_trivial else 'no'}")
    lines.append(f"product certificate: {_certificate_text(report.certificate)}")
    for name, res in report.checks.items():
        lines.append(f"[{res['status'].upper()}] {name}: {res['theorem']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Corpus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    recipe: str
    n: int
    matrix: ExactMatrix
    expected: dict[str, Any]

    def spec(self) -> InputSpec:
        return InputSpec(self.n, self.matrix.rows)


def _entry(recipe: str) -> CorpusEntry:
    m = re.fullmatch(r"(cdm|catmap|mp|identity)(?:\((\d+)\))?", recipe.strip())
    if not m:
        raise UnknownCorpusError(f"unknown corpus entry {recipe!r}")
    kind, arg = m.group(1), m.group(2)
    if kind in ("cdm", "catmap"):
        if arg is not None:
            raise UnknownCorpusError(f"{kind} takes no argument")
        if kind == "cdm":
            return CorpusEntry("cdm", "cdm", 1, samples.cdm(), {
                "order": 4,
                "invariant_betti": [1, 0, 1],
                "betti": [1, 1, 1, 1],
                "first_homology": {"rank": 1, "torsion": [2]},
                "product_subgroup.quotient": "Z_4",
                "cover.degree": 4,
                "cover.winding": 4,
                "bundle_trivial": False,
                "certificate.kind": "NotAProduct",
                "certificate.rule": "dim3-aspherical",
            })
        return CorpusEntry("catmap", "catmap", 1, samples.catmap(), {
            "order": "infinite",
            "wang_betti": [1, 1, 1, 1],
            "first_homology": {"rank": 1, "torsion": []},
            "bundle_trivial": False,
            "structure_group": "infinite cyclic",
        })
    if arg is None or int(arg) < 1:
        raise UnknownCorpusError(f"{kind} needs a positive integer argument, e.g. {kind}(2)")
    k = int(arg)
    if kind == "mp":
        return CorpusEntry(f"mp({k})", f"mp({k})", k, samples.mp(k), {
            "order": 6,
            "first_homology": {"rank": 1, "torsion": []},
            "betti[1]": 1,
            "cover.degree": 6,
            "cover.winding": 6,
            "product_subgroup.quotient": "Z_6",
            "certificate.kind": "NotAProduct",
            "certificate.rule": "solvable-perfect",
        })
    return CorpusEntry(f"identity({k})", f"identity({k})", k, samples.identity(k), {
        "order": 1,
        "betti": [comb(2 * k + 1, s) for s in range(2 * k + 2)],
        "cover.degree": 1,
        "bundle_trivial": True,
        "certificate.kind": "TrivialProduct",
    })


ALL_RECIPES = ("cdm", "mp(1)", "mp(2)", "mp(3)", "mp(4)",
               "identity(1)", "identity(2)", "identity(3)", "catmap")


def corpus_entries(name: str = "all") -> list[CorpusEntry]:
    if name == "all":
        return [_entry(r) for r in ALL_RECIPES]
    return [_entry(name)]


def _lookup(report_dict: dict, path: str):
    cur: Any = report_dict
    for part in path.split("."):
        m = re.fullmatch(r"(\w+)(?:\[(\d+)\])?", part)
        cur = cur[m.group(1)]
        if m.group(2) is not None:
            cur = cur[int(m.group(2))]
    return cur


def compare_expected(entry: CorpusEntry, report: Report) -> list[str]:
    """Differences between the computed report and the entry's expected highlights."""
    d = report.to_dict()
    diffs = []
    for path, want in entry.expected.items():
        try:
            got = _lookup(d, path)
        except (KeyError, IndexError, TypeError):
            got = "<missing>"
        if got != want:
            diffs.append(f"{entry.name}: {path}: expected {want!r}, got {got!r}")
    return diffs


def corpus(name: str = "all") -> list[tuple[CorpusEntry, Report]]:
    """Run built-in examples and compare them with their expected values.

    Raises CorpusMismatchError listing every differing value.
    """
    out = []
    diffs = []
    for entry in corpus_entries(name):
        rep = run_pipeline(entry.spec())
        diffs += compare_expected(entry, rep)
        out.append((entry, rep))
    if diffs:
        raise CorpusMismatchError("\n".join(diffs))
    return out


def omega_bar_matrix(report: Report) -> ExactMatrix | None:
    if report.omega_bar is None:
        return None
    return ExactMatrix([[Fraction(x) for x in row] for row in report.omega_bar])
