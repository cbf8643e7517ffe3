import pytest

from zext.errors import InvalidArms, InvalidShape, NOutOfRange
from zext.enumeration import (
    balanced_double_star,
    cache_file_path,
    double_star,
    fig3_tree,
    free_tree_count,
    free_tree_sequences,
    free_trees,
    read_cache_sequences,
    write_cache_file,
)
from zext.trees import build_tree, edge_spectrum

# classic unlabeled tree counts
KNOWN_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106,
    11: 235, 12: 551, 13: 1301, 14: 3159, 15: 7741, 16: 19320,
    17: 48629, 18: 123867, 19: 317955, 20: 823065,
}


class TestCountingOracle:
    def test_known_table(self):
        for n, count in KNOWN_COUNTS.items():
            assert free_tree_count(n) == count

    def test_examples(self):
        assert free_tree_count(7) == 11
        assert free_tree_count(9) == 47
        assert free_tree_count(1) == 1

    def test_out_of_range(self):
        with pytest.raises(NOutOfRange):
            free_tree_count(0)
        with pytest.raises(NOutOfRange):
            free_tree_count(41)


class TestFreeTrees:
    def test_n4_is_path_and_star(self):
        keys = {t.canonical_key for t in free_trees(4)}
        p4 = build_tree([(0, 1), (1, 2), (2, 3)])
        s4 = build_tree([(0, 1), (0, 2), (0, 3)])
        assert keys == {p4.canonical_key, s4.canonical_key}

    @pytest.mark.parametrize("n,count", [(7, 11), (10, 106)])
    def test_stream_counts(self, n, count):
        stream = free_trees(n)
        trees = list(stream)
        assert len(trees) == count
        assert stream.emitted == count

    def test_counts_match_oracle_up_to_14(self):
        for n in range(1, 15):
            assert sum(1 for _ in free_tree_sequences(n)) == free_tree_count(n)

    def test_no_duplicates_and_all_valid(self):
        for n in range(2, 14):
            keys = set()
            for t in free_trees(n):
                assert t.n == n
                # Tree construction revalidates edge count and connectivity
                assert sum(t.degrees) == 2 * (n - 1)
                keys.add(t.canonical_key)
            assert len(keys) == free_tree_count(n)

    def test_reproducible(self):
        a = [tuple(s) for s in free_tree_sequences(9)]
        b = [tuple(s) for s in free_tree_sequences(9)]
        assert a == b

    def test_out_of_range(self):
        with pytest.raises(NOutOfRange):
            free_trees(25).__iter__().__next__()
        with pytest.raises(NOutOfRange):
            list(free_trees(0))

    def test_cap_is_configurable(self):
        # raising the cap admits larger n; the first emission for any n is the
        # path rooted at its center
        seq = next(iter(free_tree_sequences(25, cap=25)))
        assert seq == list(range(13)) + list(range(1, 13))


class TestCache:
    def test_round_trip(self, tmp_path):
        path = write_cache_file(8, tmp_path)
        assert path == cache_file_path(8, tmp_path)
        header = path.read_text().splitlines()[0]
        assert header == "# n=8 count=23"
        cached = [tuple(s) for s in read_cache_sequences(path)]
        fresh = [tuple(s) for s in free_tree_sequences(8)]
        assert cached == fresh

    def test_missing_header_rejected(self, tmp_path):
        bad = tmp_path / "trees_n5.txt"
        bad.write_text("0 1 1 1 1\n")
        with pytest.raises(ValueError):
            list(read_cache_sequences(bad))


class TestDoubleStar:
    def test_minimal_is_p4(self):
        assert double_star(1, 1) == build_tree([(0, 1), (1, 2), (2, 3)])

    def test_2_3(self):
        t = double_star(2, 3)
        assert t.n == 7
        assert edge_spectrum(t).entries == {(1, 3): 2, (1, 4): 3, (3, 4): 1}

    def test_invalid_arms(self):
        with pytest.raises(InvalidArms):
            double_star(0, 3)
        with pytest.raises(InvalidArms):
            double_star(3, 0)

    def test_balanced(self):
        assert balanced_double_star(10) == double_star(4, 4)
        assert balanced_double_star(13) == double_star(5, 6)
        with pytest.raises(NOutOfRange):
            balanced_double_star(3)


class TestFig3Tree:
    def test_degenerates_to_double_star(self):
        assert fig3_tree(2, [3]).canonical_key == double_star(2, 3).canonical_key

    def test_n8_shape(self):
        t = fig3_tree(1, [2, 2])
        assert t.n == 8
        assert sorted(t.degrees, reverse=True) == [3, 3, 3, 1, 1, 1, 1, 1]

    def test_vertex_count(self):
        t = fig3_tree(4, [1, 2, 3])
        assert t.n == 1 + 3 + 4 + 6

    def test_invalid_shapes(self):
        with pytest.raises(InvalidShape):
            fig3_tree(0, [])
        with pytest.raises(InvalidShape):
            fig3_tree(2, [0, 1])
        with pytest.raises(InvalidShape):
            fig3_tree(-1, [1])
