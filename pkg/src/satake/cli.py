"""Command line interface.

Commands
--------
kottwitz    structure of T/T_0 for the configured group
compact     structure of the maximal compact quotient T/T_c
cocycle     dual-point data of an induced-torus character, with round trip
classify    canonical representative and orbit size of a parameter
equal       whether two parameters lie in one relative Weyl orbit
fold        restricted root system of the configured automorphism
verify-ks   connectedness, covering and folding checks
modulus     square-root modulus values at the T/T_0 generators
orbits      all parameter classes of bounded torsion

Exit status: 0 success, 1 bad input or configuration, 2 enumeration cap
exceeded.
"""

import argparse
import sys

from .abelian import GroupCharacter, all_characters
from .circle import ExactCircle
from .components import check_center_covers_components, \
    check_fixed_weyl_is_folded, check_tad_connected
from .config import ConfigError, GroupConfig, parse_config, resolve
from .kottwitz import SatakeParameter, character_from_dual_point, classify, \
    induced_character, induced_torus_cocycle, kottwitz_group, \
    maximal_compact_quotient, modulus_character, parameter_from_character, \
    parameters_equal
from .report import build_report, render_report
from .rootdata import CapExceeded, DEFAULT_WEYL_CAP, pinned_automorphism, \
    restricted_root_data


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors raise instead of exiting, so the
    process exit code stays under this module's control."""

    def error(self, message):
        raise ConfigError(message)


def _build_parser():
    parser = _Parser(prog="satake",
                     description="Exact classification of spherical "
                                 "representations by their parameters.")
    parser.add_argument("command", choices=sorted(_COMMANDS),
                        help="what to compute")
    parser.add_argument("--config", default=None, metavar="PATH",
                        help="configuration file (key = value lines)")
    parser.add_argument("--preset", default=None, metavar="NAME",
                        help="built-in group, e.g. 'split GL2' or 'norm-one'")
    parser.add_argument("--q", type=int, default=None,
                        help="residue cardinality override")
    parser.add_argument("--torsion", type=int, default=None, metavar="N",
                        help="torsion bound for the orbits command")
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="output format (default text)")
    parser.add_argument("--max-orbit", type=int, default=DEFAULT_WEYL_CAP,
                        dest="max_orbit", metavar="N",
                        help="enumeration cap (default %(default)s)")
    return parser


def _load(args):
    config = GroupConfig()
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = parse_config(fh.read())
    if args.preset is None and config.preset is None and args.config is None:
        raise ConfigError("nothing to do: pass --config or --preset")
    return resolve(config, preset=args.preset, q=args.q)


def _inputs(rg):
    inputs = {"name": rg.name}
    if rg.q is not None:
        inputs["q"] = rg.q
    return inputs


def _unit(n, j):
    return tuple(int(i == j) for i in range(n))


def _cmd_kottwitz(rg, args):
    kg = kottwitz_group(rg.torus)
    result = {
        "group": kg.group.describe(),
        "invariant_factors": list(kg.group.invariant_factors),
        "free_rank": kg.group.free_rank,
        "coinvariants": kg.coinvariants.describe(),
    }
    return build_report("kottwitz", _inputs(rg), result)


def _cmd_compact(rg, args):
    quo = maximal_compact_quotient(rg.torus)
    result = {"group": quo.describe(), "free_rank": quo.free_rank}
    return build_report("compact", _inputs(rg), result)


def _cmd_cocycle(rg, args):
    torus = rg.torus
    if torus is None or torus.induced_params is None:
        raise ConfigError("cocycle needs an induced torus"
                          " (preset 'induced e=.. f=..' with q)")
    fval = rg.value if rg.value is not None else ExactCircle(1)
    kg = kottwitz_group(torus)
    chi, c = induced_torus_cocycle(torus, fval)
    recovered = character_from_dual_point(kg, chi, c)
    expected = induced_character(kg, fval)
    result = {
        "chi": list(chi),
        "value": c.render(),
        "character": [v.render() for v in recovered.values],
        "round_trip": recovered == expected,
    }
    return build_report("cocycle", _inputs(rg), result)


def _character(rg, setting, values, what):
    if values is None:
        raise ConfigError(f"this command needs the `{what}` config key")
    return GroupCharacter(setting.group, values)


def _cmd_classify(rg, args):
    setting = rg.setting(cap=args.max_orbit)
    character = _character(rg, setting, rg.values, "values")
    cls = classify(setting,
                   parameter_from_character(setting.kottwitz, character),
                   max_orbit=args.max_orbit)
    result = {
        "group": setting.group.describe(),
        "canonical": [v.render() for v in cls.representative.character.values],
        "orbit_size": cls.orbit_size,
    }
    return build_report("classify", _inputs(rg), result)


def _cmd_equal(rg, args):
    setting = rg.setting(cap=args.max_orbit)
    c1 = _character(rg, setting, rg.values, "values")
    c2 = _character(rg, setting, rg.values2, "values2")
    same = parameters_equal(setting, SatakeParameter(c1), SatakeParameter(c2),
                            max_orbit=args.max_orbit)
    result = {"group": setting.group.describe(), "equal": same}
    return build_report("equal", _inputs(rg), result)


def _cmd_fold(rg, args):
    if rg.datum is None:
        raise ConfigError("fold needs a root datum, not a bare torus")
    pin = pinned_automorphism(rg.datum, rg.tau_char)
    rrd = restricted_root_data(rg.datum, pin)
    result = {
        "type": rrd.type_name,
        "non_reduced": rrd.non_reduced,
        "invariant_rank": rrd.projection.target.rank,
        "restricted_root_count": len(rrd.datum.roots),
        "reduced_root_count": len(rrd.reduced_datum.roots),
    }
    return build_report("fold", _inputs(rg), result)


def _cmd_verify_ks(rg, args):
    if rg.datum is None:
        raise ConfigError("verify-ks needs a root datum, not a bare torus")
    pin = pinned_automorphism(rg.datum, rg.tau_char)
    tad = check_tad_connected(rg.datum, pin)
    cover = check_center_covers_components(rg.datum, pin)
    foldc = check_fixed_weyl_is_folded(rg.datum, pin, cap=args.max_orbit)
    result = {
        "tad_connected": tad.is_connected(),
        "center_covers": cover.surjective,
        "fixed_equals_folded": foldc.match,
        "fixed_order": foldc.fixed_order,
        "folded_order": foldc.folded_order,
        "pi0_torus": cover.pi0_torus.describe(),
        "pi0_center": cover.pi0_center.describe(),
    }
    return build_report("verify-ks", _inputs(rg), result)


def _cmd_modulus(rg, args):
    setting = rg.setting(cap=args.max_orbit)
    n = setting.group.ngens
    values = [modulus_character(setting, _unit(n, j)).render()
              for j in range(n)]
    result = {"group": setting.group.describe(), "values": values}
    return build_report("modulus", _inputs(rg), result)


def _cmd_orbits(rg, args):
    if args.torsion is None:
        raise ConfigError("orbits needs --torsion N")
    if args.torsion < 1:
        raise ConfigError("--torsion must be positive")
    setting = rg.setting(cap=args.max_orbit)
    classes = {}
    count = 0
    for character in all_characters(setting.group, args.torsion):
        count += 1
        if count > args.max_orbit:
            raise CapExceeded(
                f"character enumeration exceeded cap {args.max_orbit}")
        cls = classify(setting, SatakeParameter(character),
                       max_orbit=args.max_orbit)
        classes.setdefault(cls.key(), cls)
    listed = []
    for key in sorted(classes):
        cls = classes[key]
        listed.append({
            "values": [v.render() for v in cls.representative.character.values],
            "orbit_size": cls.orbit_size,
        })
    result = {
        "group": setting.group.describe(),
        "torsion": args.torsion,
        "character_count": count,
        "class_count": len(listed),
        "classes": listed,
    }
    return build_report("orbits", _inputs(rg), result)


_COMMANDS = {
    "kottwitz": _cmd_kottwitz,
    "compact": _cmd_compact,
    "cocycle": _cmd_cocycle,
    "classify": _cmd_classify,
    "equal": _cmd_equal,
    "fold": _cmd_fold,
    "verify-ks": _cmd_verify_ks,
    "modulus": _cmd_modulus,
    "orbits": _cmd_orbits,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        rg = _load(args)
        report = _COMMANDS[args.command](rg, args)
        sys.stdout.write(render_report(report, args.format))
        return 0
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
