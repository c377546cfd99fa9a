"""Grid sweeps of the sensitivity bounds over parameter pairs.

Writes one CSV per axis pair (plus a thresholds sidecar marking where a
bound starts to improve on the envelope) for the shipped example joint
or any observed joint given with ``--input``.  The grids are what the
explorer's heatmaps consume.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from counterbound import ObservedJoint, SweepSpec, sweep

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

# (target, side, axis1, axis2): the two lower-end pairs show when the
# bound lifts off zero, the upper pair when the envelope cap tightens
DEFAULT_PLANS = (
    ("benefit", "lower", "m_x", "M_xp"),
    ("benefit", "upper", "M_x", "m_xp"),
    ("harm", "lower", "m_xp", "M_x"),
    ("ate", "lower", "m_x", "M_xp"),
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--input", type=Path,
                    default=DATA_DIR / "observed_case.json",
                    help="observed joint JSON file")
    ap.add_argument("--out-dir", type=Path, default=Path("sweeps"),
                    help="directory for the CSV grids")
    ap.add_argument("--res", type=int, default=101,
                    help="grid points per axis")
    args = ap.parse_args()

    obs = ObservedJoint.from_dict(json.loads(args.input.read_text()))
    args.out_dir.mkdir(parents=True, exist_ok=True)

    for target, side, axis1, axis2 in DEFAULT_PLANS:
        spec = SweepSpec(target=target, side=side, axis1=axis1, axis2=axis2,
                         resolution=args.res)
        result = sweep(obs, spec)
        stem = f"{target}_{side}_{axis1}_{axis2}"
        csv_path = args.out_dir / f"{stem}.csv"
        csv_path.write_text(result.to_csv())
        sidecar = args.out_dir / f"{stem}.thresholds.json"
        sidecar.write_text(json.dumps(result.thresholds_json(), indent=2) + "\n")
        filled = int(result.valid.sum())
        print(f"{csv_path}  ({filled}/{result.valid.size} cells valid)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
