"""Command-line front end.

Subcommands: validate | tables | quiver-dot | check | transform |
search-fan | theta-weight.  Every command reads one declarative TOML
config (path given positionally or through MCKAY_CONFIG) describing the
group, the fan -- explicitly or as triangulation-search directives --
and optionally a second fan and a theta weighting.  Exit codes: 0 for
success/pass, 1 for a failed or inconclusive check, 2 for input errors.
All output is byte-deterministic for a fixed config.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .group_characters import GroupData, character_group, image_of_rho
from .toric_fan import (
    Cone,
    Fan,
    LatticeN,
    OrbitId,
    Ray,
    is_projective,
    junior_points,
    search_symmetric_triangulations,
    validate_fan,
)
from .mckay_quiver import build_quiver, export_dot
from .gnat_family import (
    GnatFamily,
    Theta,
    direct_transform,
    is_valid_family,
    max_shift_family,
    principal_table_tsv,
    q_table_tsv,
    theta_plus,
    theta_weight,
    zero_divisor_listing,
    zero_divisor_table,
)
from .orthogonality import (
    arrow_types,
    ArrowType,
    check_corollary2,
    check_pair,
    same_orbit_certificate,
)


class ConfigError(Exception):
    pass


@dataclass
class ProjectConfig:
    group: GroupData
    rays: tuple | None
    cones: tuple | None
    search: dict | None
    second_fan: Fan | None
    theta_spec: dict | None
    path: Path


def _parse_rays(entries) -> tuple:
    rays = []
    for k, entry in enumerate(entries, start=1):
        try:
            gen = tuple(Fraction(str(x)) for x in entry)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"ray {k}: {exc}") from None
        rays.append(Ray(k, gen))
    return tuple(rays)


def load_config(path: str | os.PathLike) -> ProjectConfig:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None

    if "group" not in data:
        raise ConfigError(f"{path}: missing [group] section")
    gsec = data["group"]
    try:
        group = GroupData(tuple(gsec["orders"]), tuple(map(tuple, gsec["weights"])))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: bad [group]: {exc}") from None

    fsec = data.get("fan", {})
    rays = _parse_rays(fsec["rays"]) if "rays" in fsec else None
    cones = (
        tuple(Cone(tuple(c)) for c in fsec["cones"]) if "cones" in fsec else None
    )
    search = fsec.get("search")
    if cones is None and search is None:
        raise ConfigError(f"{path}: [fan] needs either cones or a [fan.search] table")

    second = None
    if "second_fan" in data:
        ssec = data["second_fan"]
        try:
            second = Fan(
                _parse_rays(ssec["rays"]),
                tuple(Cone(tuple(c)) for c in ssec["cones"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{path}: bad [second_fan]: {exc}") from None

    return ProjectConfig(
        group=group,
        rays=rays,
        cones=cones,
        search=search,
        second_fan=second,
        theta_spec=data.get("theta"),
        path=path,
    )


def resolve_fan(cfg: ProjectConfig) -> Fan:
    """The fan the config denotes: explicit cones, or the unique search hit."""
    lat = LatticeN(cfg.group)
    if cfg.cones is not None:
        rays = cfg.rays if cfg.rays is not None else tuple(junior_points(lat))
        try:
            return Fan(rays, cfg.cones)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    found = search_symmetric_triangulations(
        lat,
        required_edges=cfg.search.get("required_edges", ()),
        symmetry=cfg.search.get("symmetry"),
        rays=cfg.rays,
    )
    if not found:
        raise ConfigError("triangulation search found no fan")
    if len(found) > 1:
        raise ConfigError(
            f"triangulation search is ambiguous ({len(found)} fans); "
            "list the cones explicitly"
        )
    return found[0]


def resolve_theta(cfg: ProjectConfig) -> Theta:
    spec = cfg.theta_spec
    if spec is None or spec.get("preset") == "theta_plus":
        return theta_plus(cfg.group)
    if "values" in spec:
        values = {}
        for row in spec["values"]:
            values[tuple(row["chi"])] = Fraction(str(row["value"]))
        try:
            return Theta.of(values)
        except ValueError as exc:
            raise ConfigError(f"bad [theta]: {exc}") from None
    raise ConfigError("bad [theta]: need preset = \"theta_plus\" or a values array")


def parse_orbit(fan: Fan, spec: str) -> OrbitId:
    spec = spec.strip()
    if spec.lower() == "dense":
        return OrbitId(Cone(()))
    if not spec.startswith("S"):
        raise ConfigError(f"bad orbit spec {spec!r} (expected 'dense' or like 'S8', 'S1,7')")
    try:
        ids = tuple(sorted(int(p) for p in spec[1:].split(",")))
    except ValueError:
        raise ConfigError(f"bad orbit spec {spec!r}") from None
    if not any(set(ids) <= set(c.ray_ids) for c in fan.maximal_cones):
        raise ConfigError(f"orbit {spec!r} does not name a cone face of the fan")
    return OrbitId(Cone(ids))


def _validated_fan(cfg: ProjectConfig) -> Fan:
    """Fan for family computations; a fan failing validation is an input error."""
    fan = resolve_fan(cfg)
    report = validate_fan(LatticeN(cfg.group), fan)
    if not report.ok:
        raise ConfigError(
            "fan fails validation: " + "; ".join(report.messages or ("unknown",))
        )
    return fan


# -- subcommands -------------------------------------------------------------


def cmd_validate(cfg: ProjectConfig, args) -> int:
    lat = LatticeN(cfg.group)
    g = cfg.group
    print(f"group: order={g.order} n={g.n} lattice_index={lat.index_in_standard} "
          f"weight_image={len(image_of_rho(g))}")
    fan = resolve_fan(cfg)
    report = validate_fan(lat, fan)
    yn = lambda b: "yes" if b else "no"
    print(
        f"fan: cones={len(fan.maximal_cones)} smooth={yn(report.smooth)} "
        f"crepant={yn(report.crepant)} complete={yn(report.complete)} "
        f"projective={yn(is_projective(fan))}"
    )
    for msg in report.messages:
        print(f"  - {msg}")
    if cfg.second_fan is not None:
        report2 = validate_fan(lat, cfg.second_fan)
        print(
            f"second_fan: cones={len(cfg.second_fan.maximal_cones)} "
            f"smooth={yn(report2.smooth)} crepant={yn(report2.crepant)} "
            f"complete={yn(report2.complete)} projective={yn(is_projective(cfg.second_fan))}"
        )
        for msg in report2.messages:
            print(f"  - {msg}")
    return 0 if report.ok else 1


def cmd_tables(cfg: ProjectConfig, args) -> int:
    fan = _validated_fan(cfg)
    g = cfg.group
    fam = max_shift_family(g, fan)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "q_table.tsv": q_table_tsv(g, fan, fam, style=args.style),
        "principal_divisors.tsv": principal_table_tsv(g, fan),
        "zero_divisors.txt": zero_divisor_listing(fam, g, fan),
    }
    for name, text in sorted(files.items()):
        target = out / name
        target.write_text(text)
        print(target)
    return 0


def cmd_quiver_dot(cfg: ProjectConfig, args) -> int:
    g = cfg.group
    quiver = build_quiver(g)
    marks = {}
    if args.mark_zero_at:
        fan = _validated_fan(cfg)
        fam = max_shift_family(g, fan)
        table = zero_divisor_table(fam, g, fan)
        for spec in args.mark_zero_at:
            orbit = parse_orbit(fan, spec)
            for a, b in table.items():
                if any(b.coefficient(i) > 0 for i in orbit.cone.ray_ids):
                    tag = f"zero at {orbit.label}"
                    marks[a] = f"{marks[a]}, {tag}" if a in marks else tag
    text = export_dot(quiver, marks)
    if args.out:
        Path(args.out).write_text(text)
        print(args.out)
    else:
        sys.stdout.write(text)
    return 0


def _print_pair_verdict(verdict, g: GroupData) -> None:
    a, b = verdict.pair_labels
    print(f"pair ({a}, {b}): {verdict.status}")
    for k, comp in enumerate(verdict.components):
        print(
            f"  component {k + 1}: "
            + " ".join(g.character_label(chi) for chi in comp)
        )


def cmd_check(cfg: ProjectConfig, args) -> int:
    fan = _validated_fan(cfg)
    g = cfg.group
    fam = max_shift_family(g, fan)
    if args.corollary2:
        report = check_corollary2(fam, fan, g)
        for v in report.verdicts:
            a, b = v.pair_labels
            print(f"pair ({a}, {b}): {v.status}")
        print(f"pairs checked: {len(report.verdicts)}")
        print(f"family valid: {'yes' if report.family_valid else 'no'}")
        print(f"result: {'pass' if report.passed else 'FAIL'}")
        return 0 if report.passed else 1
    if args.same_orbit:
        orbit = parse_orbit(fan, args.same_orbit)
        verdict = same_orbit_certificate(fam, fan, g, orbit)
        _print_pair_verdict(verdict, g)
        return 0 if verdict.orthogonal else 1
    first = parse_orbit(fan, args.pair[0])
    second = parse_orbit(fan, args.pair[1])
    verdict = check_pair(fam, fan, g, (first, second))
    _print_pair_verdict(verdict, g)
    if args.dot:
        types = arrow_types(fam, fan, g, (first, second))
        tags = {
            ArrowType.SECOND_ONLY: f"zero at {first.label}",
            ArrowType.FIRST_ONLY: f"zero at {second.label}",
            ArrowType.NEITHER: "zero at both",
        }
        marks = {a: tags[t] for a, t in types.items() if t in tags}
        Path(args.dot).write_text(export_dot(build_quiver(g), marks))
        print(args.dot)
    return 0 if verdict.orthogonal else 1


def cmd_transform(cfg: ProjectConfig, args) -> int:
    if cfg.second_fan is None:
        raise ConfigError("transform needs a [second_fan] section")
    fan = _validated_fan(cfg)
    lat = LatticeN(cfg.group)
    report2 = validate_fan(lat, cfg.second_fan)
    if not report2.ok:
        raise ConfigError(
            "second fan fails validation: " + "; ".join(report2.messages)
        )
    g = cfg.group
    source_family = max_shift_family(g, cfg.second_fan)
    moved = direct_transform(source_family, cfg.second_fan, fan)
    ok, bad = is_valid_family(moved, g, fan)
    print(f"transformed family valid on target fan: {'yes' if ok else 'no'}")
    same = moved == max_shift_family(g, fan)
    print(f"equals the target fan's maximal-shift family: {'yes' if same else 'no'}")
    back = direct_transform(moved, fan, cfg.second_fan)
    round_trip = back == source_family
    print(f"round trip restores the source family: {'yes' if round_trip else 'no'}")
    return 0 if (ok and round_trip) else 1


def cmd_search_fan(cfg: ProjectConfig, args) -> int:
    if cfg.search is None:
        raise ConfigError("config has no [fan.search] table")
    lat = LatticeN(cfg.group)
    found = search_symmetric_triangulations(
        lat,
        required_edges=cfg.search.get("required_edges", ()),
        symmetry=cfg.search.get("symmetry"),
        rays=cfg.rays,
    )
    for k, fan in enumerate(found, start=1):
        cones = " ".join(
            "{" + ",".join(map(str, c.ray_ids)) + "}" for c in sorted(
                fan.maximal_cones, key=lambda c: c.ray_ids
            )
        )
        print(f"fan {k}: {cones}")
    print(f"fans found: {len(found)}")
    return 0 if found else 1


def cmd_theta_weight(cfg: ProjectConfig, args) -> int:
    fan = _validated_fan(cfg)
    g = cfg.group
    fam = max_shift_family(g, fan)
    theta = resolve_theta(cfg)
    print(theta_weight(fam, theta))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gnatfam",
        description="McKay quivers, gnat-family divisor data and "
        "degree-0 orthogonality checks for abelian quotients",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "config",
            nargs="?",
            default=None,
            help="config path (falls back to MCKAY_CONFIG)",
        )
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "validate the fan (smooth/crepant/complete) and report projectivity")

    p = add("tables", cmd_tables, "emit the coefficient, principal-divisor and zero-divisor tables")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--style", choices=("fraction", "mixed"), default="fraction")

    p = add("quiver-dot", cmd_quiver_dot, "emit the McKay quiver as DOT")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument(
        "--mark-zero-at",
        action="append",
        default=[],
        metavar="ORBIT",
        help="mark arrows vanishing at this orbit (repeatable)",
    )

    p = add("check", cmd_check, "orthogonality checks")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--pair", nargs=2, metavar=("A", "B"), help="criterion on two orbits")
    mode.add_argument(
        "--same-orbit",
        metavar="ORBIT",
        help="cycle certificate for two distinct general points of one orbit",
    )
    mode.add_argument("--corollary2", action="store_true", help="full hypothesis sweep")
    p.add_argument("--dot", default=None, help="write a marked quiver DOT for --pair")

    add("transform", cmd_transform, "direct-transform the second fan's family onto the fan")
    add("search-fan", cmd_search_fan, "run the triangulation search and list the fans")
    add("theta-weight", cmd_theta_weight, "theta-weight of the maximal-shift family")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config_path = args.config or os.environ.get("MCKAY_CONFIG")
    if not config_path:
        print("error: no config path given and MCKAY_CONFIG is unset", file=sys.stderr)
        return 2
    try:
        cfg = load_config(config_path)
        return args.func(cfg, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
