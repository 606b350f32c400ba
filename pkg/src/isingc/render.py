"""Timeline diagrams of pulse schedules: one lane per qubit, delays roughly to scale."""
from __future__ import annotations

import xml.etree.ElementTree as ET

from .schedule import Delay, Pulse, PulseGroup, PulseSchedule


def _pulse_label(p: Pulse) -> str:
    if p.is_not:
        return "NOT"
    if abs(p.angle_deg - 90.0) < 1e-9:
        return f"90_{p.axis_deg:g}"
    return f"{p.angle_deg:g}_{p.axis_deg:g}"


def _glyph(p: Pulse) -> str:
    if p.is_not:
        return "#"
    if abs(p.angle_deg - 90.0) < 1e-9 and abs(p.axis_deg - 90.0) < 1e-9:
        return "H"
    return "R"


def _columns(schedule: PulseSchedule, width: int) -> list[tuple[object, int]]:
    total = schedule.total_duration
    out = []
    for e in schedule.events:
        if isinstance(e, Delay):
            cols = max(1, round(width * e.seconds / total)) if total > 0 else 1
            out.append((e, cols))
        else:
            out.append((e, 1))
    return out


def header(schedule: PulseSchedule) -> str:
    pulses = schedule.pulses()
    nots = sum(p.is_not for p in pulses)
    return (
        f"schedule: {schedule.n_qubits} qubits, {len(pulses)} pulses ({nots} NOT), "
        f"total delay {schedule.total_duration * 1e6:.3f} us"
    )


def render_ascii(schedule: PulseSchedule, width: int = 100) -> str:
    """Lanes use '#' for NOT, 'H' for a 90 degree y pulse, 'R' for other rotations."""
    lines = [header(schedule)]
    if not schedule.events:
        return "\n".join(lines) + "\n"
    cols = _columns(schedule, width)
    lanes = {q: [] for q in range(schedule.n_qubits)}
    marks: list[str] = []
    for e, k in cols:
        if isinstance(e, Delay):
            for lane in lanes.values():
                lane.append("-" * k)
            marks.append(" " * k)
        else:
            hit = {p.qubit: _glyph(p) for p in e.pulses}
            for q, lane in lanes.items():
                lane.append(hit.get(q, "-"))
            marks.append(" ")
    for q, lane in lanes.items():
        lines.append(f"q{q} |" + "".join(lane))
    # number each delay under its start so the list below can be matched up
    ruler = []
    n = 0
    for e, k in cols:
        if isinstance(e, Delay):
            n += 1
            tag = str(n)
            ruler.append(tag[:k].ljust(k))
        else:
            ruler.append(" ")
    lines.append("    " + "".join(ruler).rstrip())
    lines.append("periods (us):")
    n = 0
    for e in schedule.events:
        if isinstance(e, Delay):
            n += 1
            lines.append(f"  {n:>3}: {e.seconds * 1e6:.3f}")
    return "\n".join(lines) + "\n"


def render_svg(schedule: PulseSchedule, width: int = 1000) -> str:
    """SVG timeline with one <rect> per pulse; NOTs filled, rotations labeled."""
    lane_h, left, top = 40, 50, 30
    n = schedule.n_qubits
    cols = _columns(schedule, width // 8)
    unit = 8
    span = sum(k for _, k in cols) * unit
    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": str(left + span + 20),
        "height": str(top + n * lane_h + 40),
    })
    ET.SubElement(svg, "text", {"x": "5", "y": "15", "font-size": "11"}).text = header(schedule)
    for q in range(n):
        y = top + q * lane_h + lane_h / 2
        ET.SubElement(svg, "text", {"x": "5", "y": f"{y + 4:g}", "font-size": "12"}).text = f"q{q}"
        ET.SubElement(svg, "line", {
            "x1": str(left), "x2": str(left + span), "y1": f"{y:g}", "y2": f"{y:g}",
            "stroke": "#888",
        })
    x = left
    for e, k in cols:
        w = k * unit
        if isinstance(e, Delay):
            ET.SubElement(svg, "text", {
                "x": f"{x + w / 2:g}", "y": str(top + n * lane_h + 15),
                "font-size": "8", "text-anchor": "middle",
            }).text = f"{e.seconds * 1e6:.0f}"
        elif isinstance(e, PulseGroup):
            for p in e.pulses:
                y = top + p.qubit * lane_h + 8
                rect = ET.SubElement(svg, "rect", {
                    "x": f"{x:g}", "y": f"{y:g}", "width": str(unit - 1),
                    "height": str(lane_h - 16), "stroke": "black",
                    "fill": "black" if p.is_not else "white",
                })
                ET.SubElement(rect, "title").text = f"q{p.qubit} {_pulse_label(p)}"
                if not p.is_not:
                    ET.SubElement(svg, "text", {
                        "x": f"{x:g}", "y": f"{y - 1:g}", "font-size": "7",
                    }).text = _pulse_label(p)
        x += w
    return ET.tostring(svg, encoding="unicode") + "\n"
