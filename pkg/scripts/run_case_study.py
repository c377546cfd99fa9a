"""End-to-end case study on the shipped example inputs.

Walks the full analysis once: envelope bounds from the observed joint,
sharpened bounds from sensitivity parameters (taken from the example
structural model, so the printout can show the oracle interval next to
every computed one), proxy-rule bounds for the well-aligned and the
modified proxy joints, and the social-good decision layer on top.  With
``--out`` the same numbers are written as one JSON document.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from counterbound import (
    Interval,
    ProxyJoint,
    Scm,
    SocialWeights,
    pn_ps_bounds,
    proxy_bounds,
    reports,
    scm_forward,
    scm_truth,
)

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


def fmt(interval: dict) -> str:
    return f"[{interval['lo']:.6f}, {interval['hi']:.6f}]"


def show(label: str, interval: dict, oracle: Interval = None) -> None:
    line = f"  {label:<24s} {fmt(interval)}"
    if oracle is not None:
        line += f"   contains oracle {fmt(oracle.to_json())}"
    print(line)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data-dir", type=Path, default=DATA_DIR,
                    help="directory with the example JSON inputs")
    ap.add_argument("--w", type=float, nargs=2, default=(1.0, 2.0),
                    metavar=("W_BENEFIT", "W_HARM"),
                    help="social-good weights")
    ap.add_argument("--out", type=Path, help="also write everything as JSON")
    args = ap.parse_args()

    scm = Scm.from_dict(json.loads((args.data_dir / "scm_case.json").read_text()))
    obs = scm_forward(scm)
    truth = scm_truth(scm)

    print("observed joint:", json.dumps(obs.to_json()))
    envelope = reports.bounds_report(obs)
    show("benefit envelope", envelope["envelope"]["benefit"]["interval"],
         truth.tp_benefit)
    show("harm envelope", envelope["envelope"]["harm"]["interval"],
         truth.tp_harm)

    print("\nsensitivity parameters set to the model's true extrema:")
    sharpened = reports.bounds_report(obs, params=truth.true_params)
    show("benefit", sharpened["sensitivity"]["benefit"]["interval"],
         truth.tp_benefit)
    show("harm", sharpened["sensitivity"]["harm"]["interval"], truth.tp_harm)
    show("ate", sharpened["ate"], Interval.point(truth.ate, kind="signed"))
    pn_ps = pn_ps_bounds(obs, Interval.point(truth.p_yx),
                         Interval.point(truth.p_yxp))
    show("necessity (at truth)", pn_ps.pn.to_json())
    show("sufficiency (at truth)", pn_ps.ps.to_json())

    print("\nproxy rules on the shipped joints:")
    payloads = {"observed": envelope, "sensitivity": sharpened,
                "pn_ps": pn_ps.to_json(), "proxy": {}}
    for name in ("proxy_case", "proxy_case_modified"):
        pj = ProxyJoint.from_dict(
            json.loads((args.data_dir / f"{name}.json").read_text()))
        res = proxy_bounds(pj)
        payloads["proxy"][name] = reports.proxy_report(pj)
        print(f"  {name}: rules {list(res.benefit.rules_fired)}")
        show("benefit", res.benefit.interval.to_json())
        show("harm", res.harm.interval.to_json())

    print(f"\nsocial good at weights {tuple(args.w)}:")
    weights = SocialWeights(*args.w)
    benefit = reports.interval_from_json(
        sharpened["sensitivity"]["benefit"]["interval"], "benefit")
    harm = reports.interval_from_json(
        sharpened["sensitivity"]["harm"]["interval"], "harm")
    ate = reports.interval_from_json(sharpened["ate"], "ate", kind="signed")
    social = reports.social_report(benefit, harm, ate, weights)
    payloads["social"] = social
    show("naive", social["naive"])
    show("refined", social["refined"]["interval"])
    print(f"  worst corner (harm, benefit): "
          f"({social['refined']['argmin']['harm']:.4f}, "
          f"{social['refined']['argmin']['benefit']:.4f})")
    print(f"  best corner  (harm, benefit): "
          f"({social['refined']['argmax']['harm']:.4f}, "
          f"{social['refined']['argmax']['benefit']:.4f})")

    if args.out:
        args.out.write_text(json.dumps(payloads, indent=2) + "\n")
        print(f"\nwrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
