"""Plain-text key-value config files for mode sets and pump specs.

Schema (one `key = value` per line, `#` comments):

    # Cartesian mode enumeration
    spatial_orders = [(0,7), (1,6)]
    j_min = -2
    j_max = 2
    k_values = [-1, 1]
    kinds = signal,idler

    # ... or an explicit mode list (takes precedence when present)
    mode.0 = signal, (0,0), 0, 1

    # pump components
    pump.0.spatial = (0,14)
    pump.0.P = +1
    pump.0.amplitude = 1.0
    pump.0.pairs = [((0,7),(0,7)), ((0,7),(2,5))]   # optional

    # optional phase modulation
    pm.chi = 1.0

`pump.N.pairs` lists allowed (signal spatial, idler spatial) couplings;
without it the component couples orders equal to its own l+p.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from typing import Optional

from .errors import ParseError
from .hgraph import PmSpec
from .modes import FieldKind, ModeId, ModeSet, PumpComponent, PumpSpec, \
    enumerate_modes

_KIND_NAMES = {"signal": FieldKind.SIGNAL, "idler": FieldKind.IDLER}


@dataclass(frozen=True)
class GraphConfig:
    modes: ModeSet
    pumps: PumpSpec
    pm: Optional[PmSpec]


def _literal(value: str, line: int):
    try:
        return ast.literal_eval(value)
    except (ValueError, SyntaxError):
        raise ParseError(f"cannot parse value {value!r}", line=line) from None


def _parse_lines(text: str) -> dict[str, tuple[str, int]]:
    entries = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if "=" not in s:
            raise ParseError(f"expected `key = value`, got {raw!r}", line=ln)
        key, value = (part.strip() for part in s.split("=", 1))
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", line=ln)
        entries[key] = (value, ln)
    return entries


def _parse_mode(value: str, line: int) -> ModeId:
    if "," not in value:
        raise ParseError(f"mode entry needs `kind, (m,u), j, k`", line=line)
    kind_name, rest = (p.strip() for p in value.split(",", 1))
    if kind_name not in _KIND_NAMES:
        raise ParseError(f"unknown field kind {kind_name!r}", line=line)
    parsed = _literal(f"({rest})", line)
    if len(parsed) != 3:
        raise ParseError(f"mode entry needs `kind, (m,u), j, k`", line=line)
    spatial, j, k = parsed
    return ModeId(_KIND_NAMES[kind_name], tuple(spatial), int(j), int(k))


def parse_graph_config(text: str) -> GraphConfig:
    entries = _parse_lines(text)

    def take(key):
        return entries.pop(key, None)

    mode_items = sorted(
        (int(k.split(".", 1)[1]), k) for k in list(entries)
        if k.startswith("mode."))
    if mode_items:
        modes = []
        for _, key in mode_items:
            value, ln = entries.pop(key)
            modes.append(_parse_mode(value, ln))
        try:
            mode_set = ModeSet(modes)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        for key in ("spatial_orders", "j_min", "j_max", "k_values", "kinds"):
            entries.pop(key, None)
    else:
        needed = {}
        for key in ("spatial_orders", "j_min", "j_max", "k_values", "kinds"):
            item = take(key)
            if item is None:
                raise ParseError(
                    f"missing key {key!r} (and no explicit mode list)")
            needed[key] = item
        orders = _literal(*needed["spatial_orders"])
        j_min = int(_literal(*needed["j_min"]))
        j_max = int(_literal(*needed["j_max"]))
        k_values = _literal(*needed["k_values"])
        kind_names = [s.strip() for s in needed["kinds"][0].split(",")]
        for name in kind_names:
            if name not in _KIND_NAMES:
                raise ParseError(f"unknown field kind {name!r}",
                                 line=needed["kinds"][1])
        kinds = {_KIND_NAMES[name] for name in kind_names}
        mode_set = enumerate_modes(
            [tuple(o) for o in orders], (j_min, j_max), list(k_values), kinds)

    pump_ids = sorted({
        int(k.split(".")[1]) for k in entries if k.startswith("pump.")})
    components = []
    for pid in pump_ids:
        prefix = f"pump.{pid}."
        fields = {}
        for key in [k for k in list(entries) if k.startswith(prefix)]:
            fields[key[len(prefix):]] = entries.pop(key)
        for required in ("spatial", "P"):
            if required not in fields:
                raise ParseError(f"pump.{pid} is missing `{required}`")
        spatial = tuple(_literal(*fields.pop("spatial")))
        p_off = int(_literal(*fields.pop("P")))
        amplitude = float(_literal(*fields.pop("amplitude"))) \
            if "amplitude" in fields else 1.0
        pairs = None
        if "pairs" in fields:
            raw = _literal(*fields.pop("pairs"))
            pairs = tuple(
                (tuple(sig), tuple(idl)) for sig, idl in raw)
        if fields:
            raise ParseError(
                f"unknown pump.{pid} keys: {sorted(fields)}")
        components.append(PumpComponent(spatial, p_off, amplitude, pairs))

    pm = None
    chi = take("pm.chi")
    if chi is not None:
        pm = PmSpec(float(_literal(*chi)))

    if entries:
        key, (_, ln) = next(iter(entries.items()))
        raise ParseError(f"unknown key {key!r}", line=ln)
    return GraphConfig(mode_set, PumpSpec(tuple(components)), pm)


_KIND_TO_NAME = {FieldKind.SIGNAL: "signal", FieldKind.IDLER: "idler"}


def format_graph_config(cfg: GraphConfig, header: str = "") -> str:
    """Serialize a config with an explicit mode list (round-trippable)."""
    lines = []
    if header:
        lines.extend(f"# {line}" for line in header.splitlines())
    for i, m in enumerate(cfg.modes):
        lines.append(
            f"mode.{i} = {_KIND_TO_NAME[m.kind]}, "
            f"({m.spatial[0]},{m.spatial[1]}), {m.j}, {m.k}")
    for i, comp in enumerate(cfg.pumps.components):
        lines.append(f"pump.{i}.spatial = ({comp.spatial[0]},{comp.spatial[1]})")
        lines.append(f"pump.{i}.P = {comp.freq_offset:+d}")
        lines.append(f"pump.{i}.amplitude = {comp.amplitude!r}")
        if comp.pairs is not None:
            body = ", ".join(
                f"(({s[0]},{s[1]}),({t[0]},{t[1]}))" for s, t in comp.pairs)
            lines.append(f"pump.{i}.pairs = [{body}]")
    if cfg.pm is not None:
        lines.append(f"pm.chi = {cfg.pm.chi_weight!r}")
    return "\n".join(lines) + "\n"
