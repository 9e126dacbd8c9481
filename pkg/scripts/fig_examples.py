"""Check the worked examples shipped in games/ and print the reports."""

from pathlib import Path

from atlsc.gamefile import load_game
from atlsc.strategies import check_memoryless, check_windowed
from atlsc.syntax import parse_atlsc

GAMES = Path(__file__).resolve().parent.parent / "games"

CASES = [
    ("fig1.game", "<<a1>>_0 F f", None),
    ("fig1.game", "<<a1>>_0 X X X f", None),
    ("fig1.game", "<<a1>> X X X f", 3),
    ("fig1.game", "<<a1>> F f", 2),
    ("fig3.game", "A X <<a1>> X f & !<<a1>> X X f", 3),
]


def main():
    for name, text, window in CASES:
        g = load_game(GAMES / name)
        f = parse_atlsc(text)
        r = check_memoryless(g, "q0", f) if window is None else check_windowed(g, "q0", f, window)
        print(f"{name}  {text}  [{r.engine}] -> {r.verdict}")
        for line in r.witnesses:
            print(f"    {line}")


if __name__ == "__main__":
    main()
