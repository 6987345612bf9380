"""Game JSON files and imputation text form.

Game file::

    {"players": 3, "values": {"1": "0", "1,2": "1/2", ..., "1,2,3": "1"}}

Keys are comma-separated ascending member lists; the empty coalition may be
omitted or given as ``""``. Values are ``"p/q"`` or integer strings (JSON
integers are also accepted); floating-point literals are rejected.
"""
import hashlib
import json
from fractions import Fraction

from .config import MAX_PLAYERS
from .errors import InvalidGame, ParseError
from .game import Game, members
from .rational import format_rational, parse_rational, parse_vector


def coalition_key(mask: int) -> str:
    return ",".join(str(k) for k in members(mask))


def _parse_key(key: str, m: int) -> int:
    if key.strip() == "":
        return 0
    try:
        players = [int(p) for p in key.split(",")]
    except ValueError:
        raise ParseError(f"bad coalition key {key!r}") from None
    if players != sorted(set(players)):
        raise ParseError(f"coalition key {key!r} must list distinct members in ascending order")
    if players[0] < 1 or players[-1] > m:
        raise ParseError(f"coalition key {key!r} has players outside 1..{m}")
    mask = 0
    for k in players:
        mask |= 1 << (k - 1)
    return mask


def game_from_dict(data) -> Game:
    if not isinstance(data, dict) or "players" not in data or "values" not in data:
        raise ParseError('game file must be an object with "players" and "values"')
    m = data["players"]
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ParseError(f'"players" must be a positive integer, got {m!r}')
    if m > MAX_PLAYERS:
        raise ParseError(f"player count {m} exceeds cap {MAX_PLAYERS}")
    raw = data["values"]
    if not isinstance(raw, dict):
        raise ParseError('"values" must be an object')
    vals = [None] * (1 << m)
    for key, value in raw.items():
        mask = _parse_key(key, m)
        if vals[mask] is not None:
            raise ParseError(f"duplicate coalition {key!r}")
        try:
            vals[mask] = parse_rational(value)
        except ValueError as exc:
            raise ParseError(f"coalition {key!r}: {exc}") from None
    if vals[0] is None:
        vals[0] = Fraction(0)
    missing = [coalition_key(c) for c, v in enumerate(vals) if v is None]
    if missing:
        raise ParseError(f"missing values for {len(missing)} coalition(s), e.g. {missing[:3]}")
    try:
        return Game(m, tuple(vals))
    except InvalidGame as exc:
        raise ParseError(str(exc)) from None


def game_to_dict(g: Game) -> dict:
    return {
        "players": g.m,
        "values": {coalition_key(c): format_rational(g.values[c]) for c in range(1, 1 << g.m)},
    }


def loads_game(text: str) -> Game:
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return game_from_dict(data)


def _reject_float(literal):
    raise ParseError(f"floating-point literal {literal} is not accepted; use \"p/q\"")


def dumps_game(g: Game) -> str:
    return json.dumps(game_to_dict(g), indent=2) + "\n"


def read_game(path) -> Game:
    with open(path, encoding="utf-8") as fh:
        return loads_game(fh.read())


def write_game(g: Game, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_game(g))


def parse_imputation(text: str) -> tuple:
    try:
        return parse_vector(text)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()
