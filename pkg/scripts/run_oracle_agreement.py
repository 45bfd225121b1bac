"""Compare exact and structural membership verdicts up to length 18."""
from kolab.cli import dumps
from kolab.oracle import cross_validate

if __name__ == "__main__":
    rep = cross_validate(range(19), samples=2000, seed=0, exhaustive_upto=15)
    print(f"total={rep['total']} agreement={rep['agreement']}")
    with open("oracle_agreement.json", "w") as fh:
        fh.write(dumps(rep))
