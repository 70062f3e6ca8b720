"""Report serialisation: JSON (deterministic, round-trippable), text, plot rows."""

from __future__ import annotations

import json

from .analyzer import LogBranchEntry, PoleEntry, SingularityReport

REPORT_VERSION = "1"


def _cx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _from_cx(pair) -> complex:
    return complex(pair[0], pair[1])


def pole_to_dict(e: PoleEntry) -> dict:
    return {
        "location": -e.xi,
        "xi": e.xi,
        "p_xi": e.p_xi,
        "nominal_order": e.nominal_order,
        "f_at": _cx(e.f_at),
        "effective_order": e.effective_order,
        "effective_leading": _cx(e.effective_leading_coeff),
        "resonant": e.resonant,
        "possibly_regular": e.possibly_regular,
    }


def branch_to_dict(e: LogBranchEntry) -> dict:
    return {
        "location": -e.xi,
        "xi": e.xi,
        "ell_xi": e.ell_xi,
        "g_leading": _cx(e.g_leading_coeff),
        "g_power": e.g_leading_power,
        "effective_leading": _cx(e.effective_leading_coeff),
        "effective_power": e.effective_power,
        "resonant": e.resonant,
    }


def report_to_dict(report: SingularityReport, input_echo: dict | None = None,
                   policy: dict | None = None, extra: dict | None = None) -> dict:
    from . import __version__

    out = {
        "version": __version__,
        "report_format": REPORT_VERSION,
        "input_echo": input_echo or {},
        "log_at_zero_coeff": report.log_at_zero_coeff,
        "j0": report.j0,
        "q0": report.q0,
        "poles": [pole_to_dict(e) for e in report.poles],
        "log_branches": [branch_to_dict(e) for e in report.log_branches],
        "resonance_flags": list(report.resonance_flags),
        "undetermined_xi": list(report.undetermined_xi),
        "policy": policy or {"xi_cutoff": report.xi_cutoff, "ell_max": report.ell_max},
        "warnings": list(report.notes),
    }
    if extra:
        out.update(extra)
    return out


def report_from_dict(doc: dict) -> SingularityReport:
    poles = tuple(
        PoleEntry(
            xi=p["xi"],
            p_xi=p["p_xi"],
            nominal_order=p["nominal_order"],
            f_at=_from_cx(p["f_at"]),
            effective_order=p["effective_order"],
            effective_leading_coeff=_from_cx(p["effective_leading"]),
            resonant=p["resonant"],
            possibly_regular=p["possibly_regular"],
        )
        for p in doc["poles"]
    )
    branches = tuple(
        LogBranchEntry(
            xi=b["xi"],
            ell_xi=b["ell_xi"],
            g_leading_coeff=_from_cx(b["g_leading"]),
            g_leading_power=b["g_power"],
            effective_leading_coeff=_from_cx(b["effective_leading"]),
            effective_power=b["effective_power"],
            resonant=b["resonant"],
        )
        for b in doc["log_branches"]
    )
    return SingularityReport(
        log_at_zero_coeff=doc["log_at_zero_coeff"],
        poles=poles,
        log_branches=branches,
        resonance_flags=tuple(doc["resonance_flags"]),
        xi_cutoff=doc["policy"]["xi_cutoff"],
        ell_max=doc["policy"]["ell_max"],
        undetermined_xi=tuple(doc["undetermined_xi"]),
        j0=doc["j0"],
        q0=doc["q0"],
        notes=tuple(doc["warnings"]),
    )


def dumps(doc: dict) -> str:
    # float repr is the shortest round-trip form (at most 17 significant digits)
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _fmt(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.10g}"
    return f"({z.real:.10g}{z.imag:+.10g}j)"


def _arg(var: str) -> str:
    return " s" if var == "s" else var


def render_text(report: SingularityReport, label: str | None = None) -> str:
    """Leading-order rendering of the singular part of the zeta function."""
    lines = []
    if label:
        lines.append(f"# {label}")
    lines.append("zeta_sing(s) = sin(pi s)/pi * {")
    body = []
    if report.log_at_zero_coeff:
        body.append(f"({report.log_at_zero_coeff}) * exp(-2 s (log 2 - gamma)) * log s")
    for e in report.poles:
        body.append(
            f"f(s)/(s + {e.xi:.10g})^{e.nominal_order}"
            f"    with f({-e.xi:.10g}) = {_fmt(e.f_at)}"
        )
    for e in report.log_branches:
        var = "s" if e.xi == 0 else f"(s + {e.xi:.10g})"
        body.append(
            f"g(s) log{_arg(var)}"
            f"    with g(s) = {_fmt(e.g_leading_coeff)} {var}^{e.g_leading_power} + ..."
        )
    if not body:
        body.append("0")
    lines.extend(("    " if i == 0 else "  + ") + b for i, b in enumerate(body))
    lines.append(f"}}  + holomorphic for Re s >= -{report.xi_cutoff:.10g}")
    if report.poles or report.log_branches:
        lines.append("")
        lines.append("effective leading behaviour (sin(pi s)/pi folded in):")
        for e in report.poles:
            tag = " [possibly regular]" if e.possibly_regular else ""
            tag += " [resonant]" if e.resonant else ""
            lines.append(
                f"  s = {-e.xi:.10g}: pole of order {e.effective_order}, "
                f"leading coefficient {_fmt(e.effective_leading_coeff)}{tag}"
            )
        for e in report.log_branches:
            var = "s" if e.xi == 0 else f"(s + {e.xi:.10g})"
            tag = " [resonant]" if e.resonant else ""
            lines.append(
                f"  s = {-e.xi:.10g}: log branch, {_fmt(e.effective_leading_coeff)} "
                f"{var}^{e.effective_power} log{_arg(var)}{tag}"
            )
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def plot_rows(report: SingularityReport) -> list[tuple]:
    """Rows ``(location, type, order, |leading|)`` sorted by distance from 0."""
    rows = []
    if report.log_at_zero_coeff:
        rows.append((0.0, "log0", 1, float(abs(report.log_at_zero_coeff))))
    rows += [(-e.xi, "pole", e.effective_order, abs(e.effective_leading_coeff))
             for e in report.poles]
    rows += [(-e.xi, "log", e.effective_power, abs(e.effective_leading_coeff))
             for e in report.log_branches]
    return sorted(rows, key=lambda r: (abs(r[0]), r[1]))


def render_plotdata(report: SingularityReport) -> str:
    out = ["location\ttype\torder\tabs_leading"]
    out += [f"{loc!r}\t{kind}\t{order}\t{mag!r}" for loc, kind, order, mag in plot_rows(report)]
    return "\n".join(out) + "\n"
