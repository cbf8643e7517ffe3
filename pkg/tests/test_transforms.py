import pytest

from zext.errors import AlreadyBalanced, NotADoubleStar, PreconditionViolated
from zext.indices import BigExpValue, Ordering, exp_vdb_index
from zext.enumeration import double_star, fig3_tree
from zext.transforms import (
    MoveReceipt,
    ShapeTag,
    balance_move,
    classify_shape,
    double_star_arms,
    lemma_distance_move,
    pendant_shift_move,
)
from zext.trees import build_tree


def path(n):
    return build_tree([(i, i + 1) for i in range(n - 1)])


def star(n):
    return build_tree([(0, i) for i in range(1, n)])


def spider_3_2_1():
    # center 0 with legs of lengths 3, 2, 1 (n = 7)
    return build_tree([(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (0, 6)])


def distance_move_expression(t, u, v, w) -> dict[int, int]:
    """Expected delta map assembled edge group by edge group."""
    deg = t.degrees
    big, s, td = deg[u], deg[v], deg[w]
    xs = [deg[q] for q in t.adjacency[v] if q not in (u, w)]
    ys = [deg[q] for q in t.adjacency[w] if q != v]
    terms: dict[int, int] = {}

    def add(exp, coeff):
        terms[exp] = terms.get(exp, 0) + coeff

    add(big * (s + td - 1), 1)
    add(big * s, -1)
    add(s * td, -1)
    for x in xs:
        add(x * (s + td - 1), 1)
        add(x * s, -1)
    for y in ys:
        add(y * (s + td - 1), 1)
        add(y * td, -1)
    add(s + td - 1, 1)
    return {k: c for k, c in terms.items() if c}


def pendant_shift_expression(t, u, u1, u2) -> dict[int, int]:
    deg = t.degrees
    big = deg[u]
    d1 = deg[u1] - 1
    d2 = deg[u2] - 1
    terms: dict[int, int] = {}

    def add(exp, coeff):
        terms[exp] = terms.get(exp, 0) + coeff

    add(big * (d1 + 2), 1)
    add(d1 + 2, d1 + 1)
    add(big * d2, 1)
    add(d2, d2 - 1)
    add(big * (d1 + 1), -1)
    add(d1 + 1, -d1)
    add(big * (d2 + 1), -1)
    add(d2 + 1, -d2)
    return {k: c for k, c in terms.items() if c}


def balance_expression(x, y) -> dict[int, int]:
    terms: dict[int, int] = {}

    def add(exp, coeff):
        terms[exp] = terms.get(exp, 0) + coeff

    add((x + 2) * y, 1)
    add(x + 2, x + 1)
    add(y, y - 1)
    add((x + 1) * (y + 1), -1)
    add(x + 1, -x)
    add(y + 1, -y)
    return {k: c for k, c in terms.items() if c}


def assert_receipt_consistent(r: MoveReceipt):
    definitional = exp_vdb_index(r.after, "M2") - exp_vdb_index(r.before, "M2")
    assert r.delta.terms == definitional.terms
    assert r.after.n == r.before.n


class TestDistanceMove:
    def test_spider_leg_fold(self):
        t = spider_3_2_1()
        r = lemma_distance_move(t, 0, 1, 2)
        assert r.ordering is Ordering.GREATER
        assert r.after.degrees[1] == 3 and r.after.degrees[2] == 1
        assert_receipt_consistent(r)
        assert r.delta.terms == distance_move_expression(t, 0, 1, 2)

    def test_p5_interior(self):
        # a degree-2 vertex is maximal in a path, so 1-2-3 qualifies
        t = path(5)
        r = lemma_distance_move(t, 1, 2, 3)
        assert r.ordering is Ordering.GREATER
        assert_receipt_consistent(r)
        assert r.delta.terms == distance_move_expression(t, 1, 2, 3)

    def test_star_has_no_valid_path(self):
        t = star(5)
        for u in range(5):
            for v in t.adjacency[u]:
                for w in range(5):
                    if w in (u, v):
                        continue
                    with pytest.raises(PreconditionViolated):
                        lemma_distance_move(t, u, v, w)

    def test_rejects_non_max_u(self):
        t = spider_3_2_1()
        with pytest.raises(PreconditionViolated):
            lemma_distance_move(t, 1, 2, 3)  # deg(1) = 2 < 3

    def test_rejects_pendant_w(self):
        t = spider_3_2_1()
        with pytest.raises(PreconditionViolated):
            lemma_distance_move(t, 0, 4, 5)  # 5 is pendant

    def test_rejects_non_path(self):
        t = spider_3_2_1()
        with pytest.raises(PreconditionViolated):
            lemma_distance_move(t, 0, 1, 4)  # 1-4 is not an edge


class TestPendantShift:
    def test_figure3_n8(self):
        # center with one pendant, two arms of two pendants each
        t = fig3_tree(1, [2, 2])
        assert t.n == 8
        r = pendant_shift_move(t, 1, 2)
        assert r.ordering is Ordering.GREATER
        assert_receipt_consistent(r)
        assert r.delta.terms == pendant_shift_expression(t, 0, 1, 2)
        # one side grows to three pendants, the other shrinks to one
        assert sorted((r.after.degrees[1], r.after.degrees[2])) == [2, 4]

    def test_balanced_arms_n6(self):
        t = fig3_tree(1, [1, 1])
        assert t.n == 6
        r = pendant_shift_move(t, 1, 2)
        assert r.ordering is Ordering.GREATER
        assert_receipt_consistent(r)
        assert r.delta.terms == pendant_shift_expression(t, 0, 1, 2)

    def test_rejects_non_pendant_side(self):
        # arm 1 has a grandchild, so its side neighbors are not all pendant
        t = build_tree([(0, 1), (0, 2), (1, 3), (3, 4), (2, 5), (0, 6), (1, 7)])
        with pytest.raises(PreconditionViolated):
            pendant_shift_move(t, 1, 2)

    def test_rejects_d1_smaller_than_d2(self):
        t = fig3_tree(1, [2, 1])
        with pytest.raises(PreconditionViolated):
            pendant_shift_move(t, 2, 1)  # d1 = 1 < d2 = 2
        r = pendant_shift_move(t, 1, 2)
        assert r.ordering is Ordering.GREATER

    def test_rejects_shared_neighbor_not_max(self):
        # 0 is the shared neighbor of 1 and 2 but 4 has larger degree
        t = build_tree([(0, 1), (0, 2), (1, 3), (2, 4), (4, 5), (4, 6), (4, 7)])
        with pytest.raises(PreconditionViolated):
            pendant_shift_move(t, 1, 2)

    def test_rejects_missing_pendant(self):
        t = star(5)
        with pytest.raises(PreconditionViolated):
            pendant_shift_move(t, 1, 2)  # d1 = d2 = 0


class TestBalanceMove:
    def test_s13_to_s22(self):
        t = double_star(1, 3)
        r = balance_move(t)
        assert r.after == double_star(2, 2)
        assert r.ordering is Ordering.GREATER
        assert_receipt_consistent(r)
        assert r.delta.terms == balance_expression(1, 3)
        # the two sides of the delta pin the published value maps
        assert exp_vdb_index(r.after, "M2").terms == {9: 1, 3: 4}
        assert exp_vdb_index(t, "M2").terms == {8: 1, 4: 3, 2: 1}

    def test_s14_to_s23(self):
        t = double_star(1, 4)
        r = balance_move(t)
        assert r.after == double_star(2, 3)
        assert r.ordering is Ordering.GREATER
        assert_receipt_consistent(r)
        assert r.delta.terms == balance_expression(1, 4)

    def test_already_balanced(self):
        with pytest.raises(AlreadyBalanced):
            balance_move(double_star(2, 3))
        with pytest.raises(AlreadyBalanced):
            balance_move(double_star(3, 3))

    def test_not_a_double_star(self):
        with pytest.raises(NotADoubleStar):
            balance_move(star(6))
        with pytest.raises(NotADoubleStar):
            balance_move(path(6))

    @pytest.mark.parametrize("x,y", [(1, 3), (1, 6), (2, 9), (5, 14), (1, 20)])
    def test_termination_in_predicted_steps(self, x, y):
        expected_steps = -((y - x - 1) // -2)  # ceil
        t = double_star(x, y)
        steps = 0
        while True:
            arms = double_star_arms(t)
            if arms[1] - arms[0] <= 1:
                break
            r = balance_move(t)
            assert r.ordering is Ordering.GREATER
            t = r.after
            steps += 1
        assert steps == expected_steps


class TestClassifyShape:
    def test_examples(self):
        assert classify_shape(double_star(2, 2)) is ShapeTag.DOUBLE_STAR
        assert classify_shape(path(6)) is ShapeTag.PATH
        assert classify_shape(fig3_tree(1, [2, 2])) is ShapeTag.FIG3

    def test_degenerate_p4_is_double_star(self):
        assert classify_shape(path(4)) is ShapeTag.DOUBLE_STAR
        assert double_star_arms(path(4)) == (1, 1)

    def test_star_and_p3(self):
        assert classify_shape(star(7)) is ShapeTag.STAR
        assert classify_shape(path(3)) is ShapeTag.STAR
        assert classify_shape(path(2)) is ShapeTag.PATH

    def test_fig3_family(self):
        assert classify_shape(fig3_tree(0, [1, 1, 1])) is ShapeTag.FIG3
        assert classify_shape(fig3_tree(3, [2, 1])) is ShapeTag.FIG3

    def test_other(self):
        # caterpillar with a pendant too far from the heavy vertex
        t = build_tree([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (1, 7)])
        assert classify_shape(t) is ShapeTag.OTHER

    def test_deterministic(self):
        t = fig3_tree(2, [3, 1])
        assert classify_shape(t) is classify_shape(t)


class TestReceiptSerialization:
    def test_json_shape(self):
        r = balance_move(double_star(1, 3))
        d = r.to_json_dict()
        assert d["move"] == "balance_move"
        assert d["strict_increase"] == "GREATER"
        assert d["before"] == double_star(1, 3).canonical_key
        assert d["after"] == double_star(2, 2).canonical_key
        assert BigExpValue.from_json_dict(d["delta"]).terms == r.delta.terms
