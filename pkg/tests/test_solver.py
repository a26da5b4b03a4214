import pytest

from battery import BATTERY, strategy_holds
from labelgames import games
from labelgames.games import (
    GameSpec,
    Move,
    Player,
    Variant,
    apply_move,
    initial_position,
    legal_moves,
    terminal_outcome,
)
from labelgames.graphcore import automorphisms, generate
from labelgames.solver import (
    Limits,
    Solver,
    Unsolved,
    best_move,
    canonical_key,
    encode_key,
    solve,
    solve_plain,
)

P4 = generate("path", 4)
C3, C4 = generate("cycle", 3), generate("cycle", 4)
K3 = generate("complete", 3)
S4 = generate("star", 4)


def test_graceful_star_alice():
    assert solve(games.graceful(S4), S4).winner is Player.ALICE


def test_graceful_p4_bob():
    assert solve(games.graceful(P4), P4).winner is Player.BOB


def test_cycle_sum_c4_bob():
    assert solve(games.cycle_sum(C4), C4).winner is Player.BOB


@pytest.mark.parametrize("spec,g", [(games.graceful(K3), K3), (games.cycle_sum(C3), C3)])
def test_plain_oracle_alice(spec, g):
    plain = solve_plain(spec, g)
    assert plain.winner is Player.ALICE
    assert solve(spec, g).winner is plain.winner


@pytest.mark.parametrize("case_id,spec,g", BATTERY, ids=[b[0] for b in BATTERY])
def test_result_invariants(case_id, spec, g):
    res = solve(spec, g)
    root = initial_position(spec, g)
    solver = Solver(spec, g)
    if res.best_root_move is None:
        assert terminal_outcome(spec, g, root) is not None
        return
    assert res.best_root_move in legal_moves(spec, g, root)
    child = apply_move(spec, root, res.best_root_move)
    mover = games.player_to_move(spec, root)
    child_alice = solver.alice_wins(child)
    assert (child_alice == (mover is Player.ALICE)) == (res.winner is mover)
    # principal variation replays legally and ends in the solved outcome
    pos = root
    for m in res.principal_variation:
        assert m in legal_moves(spec, g, pos)
        pos = apply_move(spec, pos, m)
    assert terminal_outcome(spec, g, pos).winner is res.winner
    assert len(res.principal_variation) <= games.element_count(spec, g)


def test_deterministic_results():
    spec = games.graceful(generate("path", 6))
    g = generate("path", 6)
    a, b = solve(spec, g), solve(spec, g)
    assert a == b


def test_node_limit_raises():
    g = generate("path", 7)
    with pytest.raises(Unsolved):
        solve(games.graceful(g), g, Limits(max_nodes=10))
    with pytest.raises(Unsolved):
        solve_plain(games.graceful(g), g, Limits(max_nodes=10))


def test_time_limit_raises():
    g = generate("cycle", 7)
    with pytest.raises(Unsolved):
        solve(GameSpec(Variant.EDGE_SUM, 1, 9), g, Limits(max_nodes=None, max_seconds=0.0), symmetry=False)


# --- best_move ----------------------------------------------------------------

def test_best_move_star_strategy():
    spec = games.graceful(S4)
    solver = Solver(spec, S4)
    assert isinstance(solver.best_move(initial_position(spec, S4)), Move)
    assert strategy_holds(spec, S4, solver)


def test_best_move_single_option():
    spec = games.graceful(P4)
    pos = initial_position(spec, P4)
    for m in [Move(0, 1), Move(1, 4), Move(2, 2)]:
        pos = apply_move(spec, pos, m)
    assert legal_moves(spec, P4, pos) == [Move(3, 3)]
    assert best_move(spec, P4, pos) == Move(3, 3)


def test_best_move_preserves_value_c4():
    spec = games.cycle_sum(C4)
    solver = Solver(spec, C4)
    root = initial_position(spec, C4)
    m = solver.best_move(root)
    assert solver.alice_wins(apply_move(spec, root, m)) == solver.alice_wins(root)


def test_best_move_at_terminal_raises():
    spec = games.graceful(generate("complete", 1))
    g = generate("complete", 1)
    end = apply_move(spec, initial_position(spec, g), Move(0, 1))
    with pytest.raises(ValueError):
        Solver(spec, g).best_move(end)


# --- canonical keys ---------------------------------------------------------------

def test_identity_group_is_raw_encoding():
    spec = GameSpec(Variant.DIST, 0, 5, constraints=(2, 1))
    pos = games.Position((3, None, 0, None), frozenset(), 2)
    assert canonical_key(spec, P4, pos) == encode_key((2, 3, -1, 0, -1))


def test_rotations_share_key():
    spec = GameSpec(Variant.DIST, 0, 6, constraints=(2, 1))
    grp = automorphisms(C4)
    base = (0, 2, None, 5)
    keys = set()
    for r in range(4):
        rot = tuple(base[(i - r) % 4] for i in range(4))
        keys.add(canonical_key(spec, C4, games.Position(rot, frozenset(), 3), grp))
    assert len(keys) == 1


def test_reflection_shares_key_for_edge_diff_only():
    diff = GameSpec(Variant.EDGE_DIFF, 1, 5)
    labels = (1, 4, None, None)
    refl = (5, 2, None, None)
    a = games.Position(labels, frozenset({1, 4}), 2)
    b = games.Position(refl, frozenset({5, 2}), 2)
    assert canonical_key(diff, P4, a) == canonical_key(diff, P4, b)
    dist = GameSpec(Variant.DIST, 1, 5, constraints=(1,))
    assert canonical_key(dist, P4, a) != canonical_key(dist, P4, b)


def test_edge_element_permutation_for_vm():
    spec = games.vm_edge(C4)
    grp = automorphisms(C4)
    a = games.Position((1, None, None, None), frozenset({1}), 1)
    b = games.Position((None, None, 1, None), frozenset({1}), 1)
    assert canonical_key(spec, C4, a, grp) == canonical_key(spec, C4, b, grp)


# --- agreement and strategies over the battery ---------------------------------------

@pytest.mark.parametrize("case_id,spec,g", BATTERY, ids=[b[0] for b in BATTERY])
def test_three_routes_agree(case_id, spec, g):
    w = solve(spec, g).winner
    assert solve(spec, g, symmetry=False).winner is w
    assert solve_plain(spec, g).winner is w


@pytest.mark.parametrize("case_id,spec,g", [b for b in BATTERY if b[2].n <= 5], ids=[b[0] for b in BATTERY if b[2].n <= 5])
def test_strategy_soundness(case_id, spec, g):
    assert strategy_holds(spec, g)
