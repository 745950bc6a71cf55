"""JSON problem documents, solution documents, and report rendering.

Problem files are authored by people, so their numbers are plain JSON
numbers. Solution payloads are produced by the engine and consumed by
other programs, so every real is a shortest round-trip decimal string:
any IEEE-754 reader recovers the exact double, independent of the host
language's float formatting. Display rounding happens only in the table
renderer (3 decimals, 4 for the inconsistency footer).
"""

from __future__ import annotations

import json
import math
from typing import Any, Iterable, NamedTuple

from .dnumber import DEFAULT_TOLERANCE, DNumber
from .relations import DPreferenceMatrix, FuzzyPreferenceRelation, Problem
from .solver import SolutionBundle, WeightSolution

DOCUMENT_VERSION = 1


class ParseError(ValueError):
    """Input is not well-formed JSON."""


class Diagnostic(NamedTuple):
    """One schema rule violation at a JSON pointer."""

    pointer: str
    rule: str
    message: str


class SchemaError(ValueError):
    """Well-formed JSON that violates the problem-document schema."""

    def __init__(self, diagnostics: list[Diagnostic]):
        first = diagnostics[0]
        super().__init__(f"{first.pointer}: {first.message}")
        self.pointer = first.pointer
        self.rule = first.rule
        self.diagnostics = tuple(diagnostics)


def format_real(x: float) -> str:
    """Shortest decimal string that parses back to the exact same double."""
    return repr(float(x))


def check_components(items: Any, pointer: str, out: list[Diagnostic]) -> bool:
    if not isinstance(items, list) or not items:
        out.append(
            Diagnostic(pointer, "components", "components must be a non-empty list")
        )
        return False
    ok = True
    values: list[float] = []
    masses: list[float] = []
    for idx, comp in enumerate(items):
        here = f"{pointer}/{idx}"
        if not isinstance(comp, dict):
            out.append(Diagnostic(here, "type", "component must be an object"))
            ok = False
            continue
        b = comp.get("b")
        v = comp.get("v")
        if not isinstance(b, (int, float)) or isinstance(b, bool) or not math.isfinite(b):
            out.append(Diagnostic(f"{here}/b", "type", "b must be a finite number"))
            ok = False
        elif not 0.0 <= float(b) <= 1.0:
            out.append(Diagnostic(f"{here}/b", "range", f"b = {b} outside [0, 1]"))
            ok = False
        else:
            values.append(float(b))
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            out.append(Diagnostic(f"{here}/v", "type", "v must be a finite number"))
            ok = False
        elif float(v) <= 0.0:
            out.append(Diagnostic(f"{here}/v", "range", f"v = {v} must be positive"))
            ok = False
        else:
            masses.append(float(v))
    if len(masses) == len(items) and math.fsum(masses) > 1.0 + DEFAULT_TOLERANCE.mass_eps:
        out.append(
            Diagnostic(
                pointer,
                "mass-sum",
                f"belief masses sum to {math.fsum(masses)}, above 1",
            )
        )
        ok = False
    if len(values) == len(items):
        ordered = sorted(values)
        for lo, hi in zip(ordered, ordered[1:]):
            if hi - lo <= DEFAULT_TOLERANCE.merge_eps:
                out.append(
                    Diagnostic(
                        pointer,
                        "distinct-values",
                        f"preference values {lo} and {hi} coincide; merge them",
                    )
                )
                ok = False
                break
    return ok


def validate_problem_document(doc: Any, partial: bool = False) -> list[Diagnostic]:
    """Schema diagnostics for a problem document; empty means valid.

    With partial=True, comparisons may be missing from the chain (a draft
    under construction) but everything present must still be well-formed.
    """
    out: list[Diagnostic] = []
    if not isinstance(doc, dict):
        return [Diagnostic("/", "type", "document must be a JSON object")]
    if doc.get("version") != DOCUMENT_VERSION:
        out.append(
            Diagnostic(
                "/version", "version", f"version must be {DOCUMENT_VERSION}"
            )
        )
    alternatives = doc.get("alternatives")
    n = 0
    if not isinstance(alternatives, list) or len(alternatives) < 2:
        out.append(
            Diagnostic(
                "/alternatives",
                "alternatives",
                "alternatives must list at least two labels",
            )
        )
    else:
        n = len(alternatives)
        seen = set()
        for idx, label in enumerate(alternatives):
            if not isinstance(label, str) or not label.strip():
                out.append(
                    Diagnostic(
                        f"/alternatives/{idx}",
                        "label",
                        "labels must be non-empty strings",
                    )
                )
            elif label in seen:
                out.append(
                    Diagnostic(
                        f"/alternatives/{idx}", "label", f"duplicate label {label!r}"
                    )
                )
            else:
                seen.add(label)
    comparisons = doc.get("comparisons")
    if not isinstance(comparisons, list):
        out.append(
            Diagnostic("/comparisons", "comparisons", "comparisons must be a list")
        )
        return out
    seen_left: dict[int, int] = {}
    for idx, item in enumerate(comparisons):
        here = f"/comparisons/{idx}"
        if not isinstance(item, dict):
            out.append(Diagnostic(here, "type", "comparison must be an object"))
            continue
        left = item.get("left")
        right = item.get("right")
        if not isinstance(left, int) or isinstance(left, bool):
            out.append(Diagnostic(f"{here}/left", "type", "left must be an integer"))
            continue
        if not isinstance(right, int) or isinstance(right, bool):
            out.append(Diagnostic(f"{here}/right", "type", "right must be an integer"))
            continue
        if n and not 1 <= left <= n - 1:
            out.append(
                Diagnostic(
                    f"{here}/left",
                    "chain",
                    f"left index {left} outside the chain 1..{n - 1}",
                )
            )
            continue
        if right != left + 1:
            out.append(
                Diagnostic(
                    f"{here}/right",
                    "chain",
                    f"comparison must pair consecutive alternatives, "
                    f"got ({left},{right})",
                )
            )
            continue
        if left in seen_left:
            out.append(
                Diagnostic(
                    here,
                    "duplicate",
                    f"comparison ({left},{right}) already given at "
                    f"/comparisons/{seen_left[left]}",
                )
            )
            continue
        seen_left[left] = idx
        check_components(item.get("components"), f"{here}/components", out)
    if n and not partial:
        for k in range(1, n):
            if k not in seen_left:
                out.append(
                    Diagnostic(
                        "/comparisons",
                        "missing",
                        f"missing comparison ({k},{k + 1})",
                    )
                )
    return out


def missing_pairs(doc: Any) -> list[int]:
    """Chain positions k whose comparison (k, k+1) is absent from a draft."""
    alternatives = doc.get("alternatives") if isinstance(doc, dict) else None
    comparisons = doc.get("comparisons") if isinstance(doc, dict) else None
    if not isinstance(alternatives, list) or not isinstance(comparisons, list):
        return []
    present = {
        item.get("left")
        for item in comparisons
        if isinstance(item, dict) and isinstance(item.get("left"), int)
    }
    return [k for k in range(1, len(alternatives)) if k not in present]


def problem_from_document(doc: dict) -> Problem:
    """Build a Problem from an already-validated document."""
    by_left = {item["left"]: item for item in doc["comparisons"]}
    judgments = tuple(
        DNumber(tuple((comp["b"], comp["v"]) for comp in by_left[k]["components"]))
        for k in range(1, len(doc["alternatives"]))
    )
    return Problem(tuple(doc["alternatives"]), judgments)


def parse_problem(text: str | bytes) -> Problem:
    """Parse and validate a problem document from JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    diagnostics = validate_problem_document(doc)
    if diagnostics:
        raise SchemaError(diagnostics)
    return problem_from_document(doc)


def problem_document(problem: Problem) -> dict:
    """Document form of a problem (numbers stay plain JSON numbers)."""
    return {
        "version": DOCUMENT_VERSION,
        "alternatives": list(problem.alternatives),
        "comparisons": [
            {
                "left": k + 1,
                "right": k + 2,
                "components": [{"b": c.b, "v": c.v} for c in d.components],
            }
            for k, d in enumerate(problem.judgments)
        ],
    }


def _dnumber_doc(d: DNumber) -> dict:
    return {
        "components": [
            {"b": format_real(c.b), "v": format_real(c.v)} for c in d.components
        ]
    }


def _real_matrix_doc(entries) -> list[list[str]]:
    return [[format_real(x) for x in row] for row in entries]


def matrix_document(matrix: DPreferenceMatrix, alternatives: Iterable[str]) -> dict:
    """Document form of a D-number preference matrix."""
    return {
        "version": DOCUMENT_VERSION,
        "alternatives": list(alternatives),
        "normalization_shift": format_real(matrix.normalization_shift),
        "entries": [[_dnumber_doc(d) for d in row] for row in matrix.entries],
    }


def cfpr_document(matrix: FuzzyPreferenceRelation, alternatives: Iterable[str]) -> dict:
    """Document form of a classical real-valued relation."""
    return {
        "version": DOCUMENT_VERSION,
        "alternatives": list(alternatives),
        "entries": _real_matrix_doc(matrix.entries),
    }


def _weights_doc(solution: WeightSolution | None, lam: float) -> dict:
    if solution is None:
        return {"infeasible": True, "lambda": format_real(lam)}
    return {
        "lambda": format_real(solution.lam),
        "values": [format_real(w) for w in solution.weights],
    }


def solution_document(bundle: SolutionBundle, credibility: str | None = None) -> dict:
    """Full machine-readable solution payload."""
    from .solver import PRESET_LAMBDAS

    ranking = bundle.ranking
    requested = dict(_weights_doc(bundle.requested, bundle.requested.lam))
    requested["credibility"] = credibility
    return {
        "version": DOCUMENT_VERSION,
        "alternatives": list(bundle.alternatives),
        "matrices": {
            "preference": {
                "normalization_shift": format_real(bundle.matrix.normalization_shift),
                "entries": [
                    [_dnumber_doc(d) for d in row] for row in bundle.matrix.entries
                ],
            },
            "integration": _real_matrix_doc(bundle.integration.entries),
            "integration_mass": _real_matrix_doc(bundle.integration.q),
            "probability": _real_matrix_doc(bundle.probability.entries),
            "probability_triangular": _real_matrix_doc(bundle.probability_triangular),
            "integration_completed": _real_matrix_doc(bundle.completed.entries),
            "integration_completed_triangular": _real_matrix_doc(
                bundle.completed_triangular
            ),
        },
        "ranking": {
            "order": [i + 1 for i in ranking.order],
            "labels": [bundle.alternatives[i] for i in ranking.order],
            "upset_sum": format_real(ranking.upset_sum),
            "optimal": ranking.optimal,
        },
        "inconsistency_degree": format_real(bundle.inconsistency),
        "weights": {
            "requested": requested,
            "presets": {
                name: _weights_doc(bundle.presets[name], PRESET_LAMBDAS[name])
                for name in PRESET_LAMBDAS
            },
        },
        "intervals": {
            "lambda_min": (
                None if bundle.lambda_min is None else format_real(bundle.lambda_min)
            ),
            "per_alternative": [
                {
                    "lower": format_real(iv.lower),
                    "upper": format_real(iv.upper),
                    "lower_closed": iv.lower_closed,
                    "upper_closed": iv.upper_closed,
                }
                for iv in bundle.intervals
            ],
        },
        "warnings": list(bundle.warnings),
    }


def decode_solution(text: str | bytes) -> dict:
    """Parse a solution document, materializing decimal strings as floats."""
    doc = json.loads(text)

    def real(x):
        return None if x is None else float(x)

    def real_matrix(rows):
        return [[real(x) for x in row] for row in rows]

    matrices = doc["matrices"]
    out = dict(doc)
    out["matrices"] = {
        "preference": {
            "normalization_shift": real(matrices["preference"]["normalization_shift"]),
            "entries": [
                [
                    {
                        "components": [
                            {"b": real(c["b"]), "v": real(c["v"])}
                            for c in cell["components"]
                        ]
                    }
                    for cell in row
                ]
                for row in matrices["preference"]["entries"]
            ],
        },
        **{
            key: real_matrix(matrices[key])
            for key in (
                "integration",
                "integration_mass",
                "probability",
                "probability_triangular",
                "integration_completed",
                "integration_completed_triangular",
            )
        },
    }
    out["ranking"] = dict(doc["ranking"], upset_sum=real(doc["ranking"]["upset_sum"]))
    out["inconsistency_degree"] = real(doc["inconsistency_degree"])

    def weights(block):
        decoded = dict(block)
        if "lambda" in decoded:
            decoded["lambda"] = real(decoded["lambda"])
        if "values" in decoded:
            decoded["values"] = [real(w) for w in decoded["values"]]
        return decoded

    out["weights"] = {
        "requested": weights(doc["weights"]["requested"]),
        "presets": {
            name: weights(block) for name, block in doc["weights"]["presets"].items()
        },
    }
    out["intervals"] = {
        "lambda_min": real(doc["intervals"]["lambda_min"]),
        "per_alternative": [
            dict(iv, lower=real(iv["lower"]), upper=real(iv["upper"]))
            for iv in doc["intervals"]["per_alternative"]
        ],
    }
    return out


def _interval_text(lower: float, upper: float, lower_closed: bool, upper_closed: bool) -> str:
    open_b = "[" if lower_closed else "("
    close_b = "]" if upper_closed else ")"
    return f"{open_b}{lower:.3f}, {upper:.3f}{close_b}"


def render_table(bundle: SolutionBundle) -> str:
    """Human table: one row per alternative, preset weights, range, rank."""
    header = ["Alternative", "High", "Medium", "Low", "Interval range", "Ranking"]
    rows = []
    for alt in range(len(bundle.alternatives)):
        cells = [bundle.alternatives[alt]]
        for name in ("high", "medium", "low"):
            solution = bundle.presets[name]
            cells.append("--" if solution is None else f"{solution.weights[alt]:.3f}")
        iv = bundle.intervals[alt]
        cells.append(_interval_text(*iv))
        cells.append(str(bundle.ranking.position(alt) + 1))
        rows.append(cells)
    widths = [
        max(len(header[col]), *(len(row[col]) for row in rows))
        for col in range(len(header))
    ]
    lines = [
        "  ".join(header[col].ljust(widths[col]) for col in range(len(header))).rstrip()
    ]
    for row in rows:
        lines.append(
            "  ".join(row[col].ljust(widths[col]) for col in range(len(header))).rstrip()
        )
    lines.append(f"I.D. = {bundle.inconsistency:.4f}")
    return "\n".join(lines) + "\n"


def emit_report(
    bundle: SolutionBundle, fmt: str = "json", credibility: str | None = None
) -> str:
    """Serialize a solution as machine JSON or a human table."""
    if fmt == "json":
        return (
            json.dumps(solution_document(bundle, credibility), indent=2, sort_keys=True)
            + "\n"
        )
    if fmt == "table":
        return render_table(bundle)
    raise ValueError(f"unknown report format {fmt!r}")
