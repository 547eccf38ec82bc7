"""
Verification Reports
Check/Report model with deterministic JSON output plus markdown and HTML
renderings for humans.
"""
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import markdown

logger = logging.getLogger(__name__)


def _finite(x: float) -> Any:
    """JSON-safe float: non-finite values become strings."""
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


@dataclass
class Check:
    """One named condition with worst-case magnitudes over its samples."""

    name: str
    condition: str
    samples: int = 0
    worst_abs: float = 0.0
    worst_rel: float = 0.0
    passed: bool = True
    detail: str = ""

    def record(self, err: float, scale: float, bound: float) -> bool:
        """Record |error| against its scale; returns whether this sample passed."""
        self.samples += 1
        err = float(err)
        scale = max(1.0, float(scale))
        if not math.isfinite(err):
            self.worst_abs = math.inf
            self.worst_rel = math.inf
            self.passed = False
            return False
        self.worst_abs = max(self.worst_abs, err)
        self.worst_rel = max(self.worst_rel, err / scale)
        ok = err <= bound
        if not ok:
            self.passed = False
        return ok

    def expect(self, ok: bool, detail: str = "") -> bool:
        """Record a boolean outcome (exact checks)."""
        self.samples += 1
        if not ok:
            self.fail(detail)
        return ok

    def fail(self, detail: str) -> None:
        self.passed = False
        if detail and not self.detail:
            self.detail = detail

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "name": self.name,
            "condition": self.condition,
            "samples": self.samples,
            "worst_abs": _finite(self.worst_abs),
            "worst_rel": _finite(self.worst_rel),
            "pass": self.passed,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    """A suite run: checks plus free-form metadata."""

    suite: str
    seed: int
    tau: complex
    checks: List[Check] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def check(self, name: str, condition: str) -> Check:
        chk = Check(name, condition)
        self.checks.append(chk)
        return chk

    def extend(self, checks: List[Check]) -> None:
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.sorted_checks() if not c.passed]

    def sorted_checks(self) -> List[Check]:
        return sorted(self.checks, key=lambda c: (c.name, c.condition))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "curve": {"tau": [self.tau.real, self.tau.imag]},
            "checks": [c.to_dict() for c in self.sorted_checks()],
            "metadata": self.metadata,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=_json_default)

    def summary(self) -> str:
        total = len(self.checks)
        failed = len(self.failures)
        status = "PASS" if failed == 0 else "FAIL"
        lines = [f"[{status}] {self.suite}: {total - failed}/{total} checks passed (seed {self.seed})"]
        for chk in self.failures:
            detail = f" ({chk.detail})" if chk.detail else ""
            lines.append(f"  - {chk.name} / {chk.condition}: worst_abs={chk.worst_abs:.3e}{detail}")
        return "\n".join(lines)


def _json_default(obj: Any) -> Any:
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def generate_markdown_report(report: Report) -> str:
    """Markdown table of all checks."""
    md = f"# Verification report: {report.suite}\n\n"
    md += f"**Seed:** {report.seed}  \n"
    md += f"**tau:** {report.tau.real:g} + {report.tau.imag:g}i  \n"
    md += f"**Status:** {'PASS' if report.passed else 'FAIL'}\n\n"
    md += "| check | condition | samples | worst abs | worst rel | pass |\n"
    md += "|---|---|---|---|---|---|\n"
    for chk in report.sorted_checks():
        md += (
            f"| {chk.name} | {chk.condition} | {chk.samples} | "
            f"{chk.worst_abs:.3e} | {chk.worst_rel:.3e} | {'yes' if chk.passed else 'NO'} |\n"
        )
    if report.metadata:
        md += "\n## Notes\n\n"
        for key in sorted(report.metadata):
            md += f"- **{key}:** {json.dumps(report.metadata[key], sort_keys=True, default=_json_default)}\n"
    return md


def generate_html_report(report: Report) -> str:
    """Standalone HTML page wrapping the markdown rendering."""
    body = markdown.markdown(generate_markdown_report(report), extensions=["tables", "fenced_code"])
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>Verification report: {report.suite}</title>
    <style>
        body {{ font-family: -apple-system, 'Segoe UI', Roboto, sans-serif; max-width: 1100px; margin: 0 auto; padding: 20px; color: #333; }}
        table {{ width: 100%; border-collapse: collapse; margin: 15px 0; }}
        th, td {{ border: 1px solid #ddd; padding: 6px 10px; text-align: left; font-size: 0.9em; }}
        th {{ background: #667eea; color: white; }}
        tr:nth-child(even) {{ background: #f0f4ff; }}
    </style>
</head>
<body>
{body}
</body>
</html>"""


def write_report(report: Report, markdown_path: Optional[str] = None, html_path: Optional[str] = None) -> None:
    if markdown_path:
        with open(markdown_path, "w", encoding="utf-8") as fh:
            fh.write(generate_markdown_report(report))
        logger.info(f"Wrote markdown report: {markdown_path}")
    if html_path:
        with open(html_path, "w", encoding="utf-8") as fh:
            fh.write(generate_html_report(report))
        logger.info(f"Wrote HTML report: {html_path}")
