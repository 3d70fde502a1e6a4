"""Report files: deterministic JSON, a text rendering and a timings sidecar"""
import os

from ..config import DEFAULT_FORMAT, REPORT_SCHEMA, REPORTS_DIR, TIMINGS_SUFFIX
from .serialization import dumps, to_plain


def render_text(report: dict) -> str:
    """Human-readable report using S_{ψ,φ}, V_φ, T_φ and [ξ]_φ notation."""
    scenario = report['scenario']
    lines = [
        f"pipframe report: {scenario['name']}",
        f"  construction: {scenario['construction']}",
        f"  seed: {scenario['seed']}",
        f"  verdict: {'PASS' if report['passed'] else 'FAIL'}",
        "",
    ]
    for section, stats in report['sections'].items():
        lines.append(f"[{section}]")
        lines.extend(_render_stats(to_plain(stats), indent=2))
        lines.append("")

    lines.append("[checks]")
    width = max((len(check['name']) for check in report['checks']), default=0)
    for check in report['checks']:
        mark = 'PASS' if check['passed'] else 'FAIL'
        lines.append(f"  {mark}  {check['name']:<{width}}  residual {_number(check['residual'])}"
                     f"  tolerance {_number(check['tolerance'])}")
    return "\n".join(lines) + "\n"


def _number(value) -> str:
    if isinstance(value, float):
        return f"{value:.3e}"
    return str(value)


def _render_stats(stats, indent: int) -> list[str]:
    pad = " " * indent
    if not isinstance(stats, dict):
        return [f"{pad}{_number(stats)}"]
    lines = []
    for key in sorted(stats):
        value = stats[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render_stats(value, indent + 2))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for row in value:
                cells = ", ".join(f"{k}={_number(v)}" for k, v in sorted(row.items()))
                lines.append(f"{pad}  - {cells}")
        else:
            lines.append(f"{pad}{key}: {_number(value)}")
    return lines


class ReportWriter:
    """Writes <basename>.json / .txt and <basename>.timings.json into one directory"""

    def __init__(self, out_dir: str = REPORTS_DIR, formats: str = DEFAULT_FORMAT):
        self.out_dir = out_dir
        self.formats = formats

    def build(self, scenario_echo: dict, sections: dict, checks: list) -> dict:
        """Assemble the report document; timings are kept out of it."""
        return {
            'schema': REPORT_SCHEMA,
            'scenario': scenario_echo,
            'sections': sections,
            'checks': checks,
            'passed': all(check['passed'] for check in checks),
        }

    def write(self, report: dict, basename: str, timings: dict | None = None) -> dict:
        """
        Write the report files.

        Args:
            report: Document from build()
            basename: File name without extension
            timings: Wall-clock seconds per step, written to the sidecar file

        Returns:
            Dict with the written paths
        """
        os.makedirs(self.out_dir, exist_ok=True)
        paths = {}
        if self.formats in ('json', 'both'):
            paths['json'] = os.path.join(self.out_dir, f"{basename}.json")
            with open(paths['json'], 'w', encoding='utf-8') as handle:
                handle.write(dumps(report))
        if self.formats in ('text', 'both'):
            paths['text'] = os.path.join(self.out_dir, f"{basename}.txt")
            with open(paths['text'], 'w', encoding='utf-8') as handle:
                handle.write(render_text(report))
        if timings is not None:
            paths['timings'] = os.path.join(self.out_dir, f"{basename}{TIMINGS_SUFFIX}")
            with open(paths['timings'], 'w', encoding='utf-8') as handle:
                handle.write(dumps({'schema': REPORT_SCHEMA, 'timings': timings}))
        return paths
