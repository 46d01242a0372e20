from pathlib import Path
import sys

# Ensure repository root is on sys.path when running this file directly
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from nslcheck.bench.domains import all_fixtures
from nslcheck.dsl.serializer import serialize_problem


def write_fixtures(target: Path) -> None:
    target.mkdir(parents=True, exist_ok=True)
    for fx in all_fixtures():
        path = target / f"{fx.name}.nsl"
        path.write_text(serialize_problem(fx.problem), encoding="utf-8")
        print(path)


if __name__ == "__main__":
    write_fixtures(Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "fixtures")
