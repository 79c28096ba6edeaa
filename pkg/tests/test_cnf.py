import pytest

from nashforge.cnf import (
    CnfFormula,
    clause_satisfied,
    formula_satisfied,
    pad_clauses,
    parse_dimacs,
    to_dimacs,
)


class TestParseDimacs:
    def test_basic(self):
        cnf = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0")
        assert cnf.num_vars == 2
        assert cnf.clauses == ((1, 2), (-1, -2))

    def test_arity_error(self):
        with pytest.raises(ValueError, match="literals"):
            parse_dimacs("p cnf 4 1\n1 2 3 4 0")

    def test_comments_skipped(self):
        cnf = parse_dimacs("c hello\nc world\np cnf 1 1\nc mid\n1 0")
        assert cnf.clauses == ((1,),)

    def test_clause_spanning_lines(self):
        cnf = parse_dimacs("p cnf 3 1\n1 2\n3 0")
        assert cnf.clauses == ((1, 2, 3),)

    def test_header_count_mismatch(self):
        with pytest.raises(ValueError, match="clauses"):
            parse_dimacs("p cnf 2 3\n1 0\n2 0")

    def test_zero_length_clause(self):
        with pytest.raises(ValueError, match="zero-length"):
            parse_dimacs("p cnf 1 2\n1 0\n0")

    def test_missing_header(self):
        with pytest.raises(ValueError, match="header"):
            parse_dimacs("1 2 0")

    def test_variable_out_of_range(self):
        with pytest.raises(ValueError, match="references"):
            parse_dimacs("p cnf 1 1\n2 0")

    def test_duplicate_literal_rejected(self):
        with pytest.raises(ValueError, match="repeats"):
            parse_dimacs("p cnf 2 1\n1 1 0")

    def test_round_trip(self):
        text = "p cnf 2 2\n1 2 0\n-1 -2 0\n"
        assert to_dimacs(parse_dimacs(text)) == text


class TestPadClauses:
    def test_power_of_two_unchanged(self):
        cnf = CnfFormula(8, tuple((i,) for i in range(1, 9)))
        assert pad_clauses(cnf) == cnf

    def test_seven_clauses_one_added(self):
        cnf = CnfFormula(7, tuple((i,) for i in range(1, 8)))
        padded = pad_clauses(cnf)
        assert padded.num_clauses == 8
        assert padded.num_vars == 8
        assert padded.clauses[-1] == (8,)

    def test_five_clauses_three_added(self):
        cnf = CnfFormula(5, tuple((i,) for i in range(1, 6)))
        padded = pad_clauses(cnf)
        assert padded.num_clauses == 8
        assert padded.num_vars == 8

    def test_single_clause_padded_to_two(self):
        padded = pad_clauses(CnfFormula(1, ((1,),)))
        assert padded.num_clauses == 2
        assert padded.clauses == ((1,), (2,))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            pad_clauses(CnfFormula(1, ()))

    def test_satisfiability_preserved(self):
        from nashforge.oracles import sat_brute_force

        for clauses in (((1, 2), (-1, -2), (-1, 2)), ((1,), (-1,), (2,))):
            cnf = CnfFormula(2, clauses)
            padded = pad_clauses(cnf)
            assert (sat_brute_force(cnf) is None) == (sat_brute_force(padded) is None)


class TestEvaluation:
    def test_clause_satisfied(self):
        assert clause_satisfied((1, -2), {1: False, 2: False})
        assert not clause_satisfied((1, 2), {1: False, 2: False})

    def test_formula_satisfied(self):
        cnf = CnfFormula(2, ((1, 2), (-1, -2)))
        assert formula_satisfied(cnf, {1: True, 2: False})
        assert not formula_satisfied(cnf, {1: True, 2: True})
