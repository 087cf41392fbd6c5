"""Graphs on permutations: constructions, catalogues, exhaustive search."""

import math

import pytest

from ekrperm.errors import (
    DegreeRangeError,
    FamilyValidationError,
    UnsupportedConstructionError,
)
from ekrperm.graphs import (
    affine_clique,
    all_point_families,
    build_graph,
    cycle_decomposition_clique,
    equitable_quotient,
    family,
    latin_clique,
    latin_coset_cover,
    max_independent_sets,
    odd_n_latin_clique,
    read_family,
    validate_clique,
    validate_family,
    write_family,
)
from ekrperm.permgroup import (
    agreements,
    all_permutations,
    compose,
    cycle_type,
    derangement_count,
    fixed_points,
    identity,
    inverse,
    parse_one_line,
)


class TestBuildGraph:
    def test_degree_equals_derangement_count(self):
        for n in (3, 4, 5):
            g = build_graph(n, 0)
            assert g.degree == derangement_count(n)
            degrees = {mask.bit_count() for mask in g.adjacency_masks()}
            assert degrees == {derangement_count(n)}

    def test_threshold_one_degree(self):
        g = build_graph(5, 1)
        assert g.degree == 89
        assert g.adjacency_masks()[0].bit_count() == 89

    def test_adjacency_predicate(self):
        g = build_graph(4, 0)
        assert g.adjacent(identity(4), parse_one_line("2,1,4,3"))
        assert not g.adjacent(identity(4), parse_one_line("2,1,3,4"))

    def test_masks_symmetric_and_irreflexive(self):
        g = build_graph(4, 0)
        masks = g.adjacency_masks()
        for i, mask in enumerate(masks):
            assert not (mask >> i) & 1
            for j in range(24):
                assert ((mask >> j) & 1) == ((masks[j] >> i) & 1)

    def test_implicit_mode_above_dense_cap(self):
        g = build_graph(7, 0)
        assert not g.dense
        assert g.degree == derangement_count(7)
        assert g.adjacent(identity(7), parse_one_line("2,1,4,3,6,7,5"))
        with pytest.raises(DegreeRangeError):
            g.adjacency_masks()

    def test_threshold_range(self):
        with pytest.raises(ValueError):
            build_graph(4, 3)
        with pytest.raises(ValueError):
            build_graph(4, -1)


class TestValidators:
    def test_validate_clique_witness(self):
        ok, witness = validate_clique([identity(4), parse_one_line("2,1,3,4")], 0)
        assert not ok
        assert set(witness) == {identity(4), parse_one_line("2,1,3,4")}

    def test_validate_family_witness(self):
        derangement = parse_one_line("2,1,4,3")
        ok, witness = validate_family([identity(4), derangement], 0)
        assert not ok
        assert set(witness) == {identity(4), derangement}

    def test_valid_inputs(self):
        assert validate_clique(latin_clique(4).members, 0) == (True, None)
        assert validate_family(family([(1, 1)], 4).members, 0) == (True, None)


class TestLatinCliques:
    def test_degree_two(self):
        cert = latin_clique(2)
        assert {p.images for p in cert.members} == {(1, 2), (2, 1)}

    def test_rows_pairwise_disagree(self):
        for n in (3, 4, 5, 8):
            cert = latin_clique(n)
            assert cert.size == n
            assert cert.construction == "cyclic-latin"
            assert cert.validated
            members = cert.members
            for i in range(n):
                for j in range(i + 1, n):
                    assert agreements(members[i], members[j]) == 0

    def test_forms_a_group(self):
        # the cyclic construction is closed under composition
        members = set(latin_clique(5).members)
        for p in members:
            for q in members:
                assert compose(p, q) in members

    def test_contains_identity(self):
        assert identity(6) in latin_clique(6).members


class TestOddLatinCliques:
    def test_prescribed_second_row(self):
        cert = odd_n_latin_clique(5)
        assert cert.members[0] == identity(5)
        assert cert.members[1].images == (2, 1, 5, 3, 4)

    def test_second_row_is_odd(self):
        # parity is what distinguishes this clique from the cyclic one
        for n in (5, 7, 9):
            cert = odd_n_latin_clique(n)
            second = cert.members[1]
            parity = (-1) ** (n - len(cycle_type(second)))
            assert parity == -1

    def test_validates_at_odd_degrees(self):
        for n in (5, 7, 9):
            cert = odd_n_latin_clique(n)
            assert cert.size == n
            assert cert.construction == "odd-latin"
            assert cert.validated

    def test_rejected_degrees(self):
        for n in (3, 4, 6):
            with pytest.raises(UnsupportedConstructionError):
                odd_n_latin_clique(n)


class TestCycleDecompositionCliques:
    def test_odd_degrees_by_construction(self):
        for n in (3, 5, 7):
            cert = cycle_decomposition_clique(n)
            assert cert.size == n
            assert cert.construction == "hamilton-decomposition"
            assert identity(n) in cert.members

    def test_members_are_full_cycles(self):
        for n in (5, 7):
            for p in cycle_decomposition_clique(n).members:
                if p != identity(n):
                    assert cycle_type(p) == (n,)

    def test_even_degree_eight_by_search(self):
        cert = cycle_decomposition_clique(8)
        assert cert.size == 8
        assert all(
            cycle_type(p) == (8,) for p in cert.members if p != identity(8)
        )

    def test_impossible_even_degrees(self):
        with pytest.raises(UnsupportedConstructionError):
            cycle_decomposition_clique(4)
        with pytest.raises(UnsupportedConstructionError):
            cycle_decomposition_clique(6)

    def test_arc_coverage(self):
        # the n-1 cycles traverse every ordered pair exactly once
        n = 7
        members = [p for p in cycle_decomposition_clique(n).members if p != identity(n)]
        arcs = set()
        for p in members:
            for i in range(1, n + 1):
                arc = (i, p(i))
                assert arc not in arcs
                arcs.add(arc)
        assert len(arcs) == n * (n - 1)


class TestAffineCliques:
    def test_prime_field_degrees(self):
        for q in (3, 5, 7):
            cert = affine_clique(q)
            assert cert.size == q * (q - 1)
            assert cert.t == 1
            assert cert.construction == "affine"

    def test_degree_three_is_whole_group(self):
        members = {p.images for p in affine_clique(3).members}
        assert members == {p.images for p in all_permutations(3)}

    def test_prime_power_degrees(self):
        assert affine_clique(4).size == 12
        assert affine_clique(8).size == 56
        assert affine_clique(9).size == 72

    def test_sharply_two_transitive(self):
        # every ordered pair goes to every ordered pair exactly once
        q = 5
        members = affine_clique(q).members
        for x1 in range(1, q + 1):
            for x2 in range(1, q + 1):
                if x1 == x2:
                    continue
                for y1 in range(1, q + 1):
                    for y2 in range(1, q + 1):
                        if y1 == y2:
                            continue
                        hits = [
                            p for p in members if p(x1) == y1 and p(x2) == y2
                        ]
                        assert len(hits) == 1

    def test_non_prime_power_rejected(self):
        with pytest.raises(UnsupportedConstructionError):
            affine_clique(6)
        with pytest.raises(UnsupportedConstructionError):
            affine_clique(10)


class TestFamilies:
    def test_single_constraint_size(self):
        fam = family([(1, 1)], 4)
        assert fam.size == 6
        assert all(p(1) == 1 for p in fam.members)

    def test_two_constraint_size(self):
        fam = family([(1, 2), (2, 1)], 5)
        assert fam.size == 6
        assert all(p(1) == 2 and p(2) == 1 for p in fam.members)

    def test_members_pairwise_intersect(self):
        fam = family([(3, 3)], 4)
        for p in fam.members:
            for q in fam.members:
                assert agreements(p, q) >= 1

    def test_two_constraints_meet_in_two_points(self):
        fam = family([(1, 1), (2, 2)], 5)
        for p in fam.members:
            for q in fam.members:
                assert agreements(p, q) >= 2
        assert validate_family(fam.members, t=1) == (True, None)

    def test_conflicting_constraints(self):
        with pytest.raises(ValueError):
            family([(1, 1), (1, 2)], 4)
        with pytest.raises(ValueError):
            family([(1, 1), (2, 1)], 4)

    def test_constraint_count_bounds(self):
        with pytest.raises(ValueError):
            family([], 4)
        with pytest.raises(ValueError):
            family([(1, 1), (2, 2), (3, 3), (4, 4)], 4)

    def test_all_point_families(self):
        catalogue = all_point_families(4)
        assert len(catalogue) == 16
        assert all(fam.size == 6 for fam in catalogue.values())
        identity_holders = [
            key for key, fam in catalogue.items() if identity(4) in fam.members
        ]
        assert sorted(identity_holders) == [(1, 1), (2, 2), (3, 3), (4, 4)]


class TestEquitableQuotient:
    def test_degree_four(self):
        q = equitable_quotient(4)
        assert q.matrix == ((0, 9), (3, 6))
        assert q.eigenvalues == (9, -3)
        assert q.cell_sizes == (6, 18)
        assert q.equitable and q.matches_closed_form

    def test_degree_five(self):
        q = equitable_quotient(5)
        assert q.matrix == ((0, 44), (11, 33))
        assert q.eigenvalues == (44, -11)

    def test_row_sums_are_the_valency(self):
        for n in range(2, 8):
            q = equitable_quotient(n)
            d = derangement_count(n)
            assert q.matrix[0][0] + q.matrix[0][1] == d
            assert q.matrix[1][0] + q.matrix[1][1] == d
            assert q.matches_closed_form


class TestCosetCover:
    def test_partition_into_cliques(self):
        n = 4
        cover = latin_coset_cover(n)
        assert len(cover) == math.factorial(n) // n
        seen = set()
        perms = list(all_permutations(n))
        for coset in cover:
            assert len(coset) == n
            seen.update(coset)
            members = [perms[r] for r in coset]
            assert validate_clique(members, 0) == (True, None)
        assert seen == set(range(math.factorial(n)))


class TestSearch:
    def test_degree_two(self):
        result = max_independent_sets(2)
        assert result.alpha == 1
        assert result.count == 2

    def test_small_degrees_catalogue(self):
        expected_counts = {3: 9, 4: 16, 5: 25}
        for n, expected in expected_counts.items():
            result = max_independent_sets(n)
            assert result.alpha == math.factorial(n - 1)
            assert result.omega == n
            assert result.tight
            assert result.count == expected
            catalogue = {
                frozenset(fam.members) for fam in all_point_families(n).values()
            }
            for members in result.sets:
                assert frozenset(members) in catalogue

    def test_workers_agree(self):
        serial = max_independent_sets(4, workers=1)
        parallel = max_independent_sets(4, workers=2)
        assert serial.sets == parallel.sets

    def test_unsupported_threshold(self):
        with pytest.raises(UnsupportedConstructionError):
            max_independent_sets(4, t=1)

    def test_degree_cap(self):
        with pytest.raises(DegreeRangeError):
            max_independent_sets(7)


class TestFamilyIo:
    def test_round_trip(self, tmp_path):
        members = family([(2, 3)], 5).members
        path = tmp_path / "family.txt"
        write_family(members, str(path))
        back = read_family(str(path), 5)
        assert tuple(back) == tuple(members)

    def test_read_rejects_wrong_degree(self, tmp_path):
        path = tmp_path / "family.txt"
        write_family([identity(4)], str(path))
        with pytest.raises(ValueError):
            read_family(str(path), 5)
