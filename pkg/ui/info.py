from collections import Counter
from typing import List

from manifold.complex_core import PairedComplex, cell_counts, edge_orbits, is_manifold, validate, vertex_orbits
from manifold.modes import Component_Kind
from manifold.symmetry import SingularityReport
from utils.const import VOLUME_NOTE, VOLUME_PLACEHOLDER

TABLE_COLUMNS = ("n", "H_1", "singular components", "volume")


def get_analysis_lines(complex_: PairedComplex, traces: bool = False) -> List[str]:
    violations = validate(complex_)
    if violations:
        return [f"complex {complex_.name}: invalid"] + [f"  {v}" for v in violations]
    counts = cell_counts(complex_)
    certificate = is_manifold(complex_)
    edges = edge_orbits(complex_)
    vertices = vertex_orbits(complex_)
    census = Counter(len(orbit) for orbit in edges)
    lines = [
        f"complex {complex_.name}",
        f"cells: sigma0={counts.sigma0} sigma1={counts.sigma1} sigma2={counts.sigma2} sigma3={counts.sigma3}",
        f"euler characteristic: {certificate.euler_characteristic}",
        f"manifold: {'yes' if certificate else 'no'}",
        "edge classes by size: " + ", ".join(f"{size}x{census[size]}" for size in sorted(census)),
        "vertex classes by size: " + ", ".join(str(len(orbit)) for orbit in vertices),
    ]
    lines += [f"  {reason}" for reason in certificate.reasons]
    if traces:
        for i, orbit in enumerate(edges, start=1):
            face, slot = orbit.representative
            lines.append(f"  edge class {i} at {face}[{slot}]: {orbit.cycle_word} | {' '.join(orbit.member_edges)}")
        for i, orbit in enumerate(vertices, start=1):
            lines.append(f"  vertex class {i}: {' '.join(orbit.member_vertices)}")
    return lines


def get_components_summary(report: SingularityReport) -> str:
    if not report.components:
        return "none"
    indices = ", ".join(str(c.branching_index) for c in report.components)
    return f"{len(report.components)} (index {indices})"


def get_report_lines(report: SingularityReport) -> List[str]:
    lines = [
        f"base: {report.base_family.name}({report.base_n})",
        f"base H_1: {report.base_homology}",
        f"covering degree: {report.covering_degree}",
        f"strongly cyclic: {'yes' if report.strongly_cyclic else 'no'}",
        f"components: {len(report.components)}",
    ]
    for component in report.components:
        kind = "axis" if component.kind == Component_Kind.ROTATION_AXIS else "edge class"
        lines.append(
            f"  {kind} index {component.branching_index} upstairs {component.upstairs_orbit_size}: {component.label}"
        )
    lines += [f"note: {note}" for note in report.notes]
    return lines


def get_table_lines(rows: List[tuple]) -> List[str]:
    lines = [" | ".join(TABLE_COLUMNS)]
    lines += [" | ".join((str(n), homology, components, VOLUME_PLACEHOLDER)) for n, homology, components in rows]
    lines.append(f"note: volume {VOLUME_PLACEHOLDER}, {VOLUME_NOTE}")
    return lines
