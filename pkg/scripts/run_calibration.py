"""Sweep the padding calibration over pad values and print the smallest G."""
from dataclasses import asdict

from kolab.cli import dumps
from kolab.params import SchemeParams
from kolab.udec import calibrate_G

if __name__ == "__main__":
    rows = []
    for pad, max_len in ((1, 9), (3, 9), (9, 9)):
        cal = calibrate_G(SchemeParams(pad=pad), max_len)
        rows.append({"pad": pad, "max_len": max_len, **asdict(cal)})
        print(f"pad={pad} max_len={max_len} G*={cal.G} premises={cal.premise_count}")
    with open("calibration.json", "w") as fh:
        fh.write(dumps(rows))
