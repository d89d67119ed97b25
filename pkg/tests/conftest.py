import pytest

from algser import EXAMPLES, DegreeSpec, solve_hpp, taylor

QUADRATIC = DegreeSpec(2, (1, 1, 1))
QUADRATIC_2 = DegreeSpec(2, (2, 2, 2))

# Polynomial listings of the worked examples, with the normalized coefficient.
LISTED_HPP = {
    "ex1": ((0, 0), (
        (1.0, -1.544503593423590),
        (0.1947992842134984, 0.06783822675080703),
        (-0.5044536972622500, -0.01090573365920830),
    )),
    "ex2": ((1, 0), (
        (-49.52369318166839, -6.946105600281359),
        (1.0, 1.695055482965655),
        (0.1125387307324166, -0.2732915349762758),
    )),
    "ex3": ((0, 0), (
        (1.0, -1.027576803009053, 0.02070967420422950),
        (2.617867885747464, -0.6563757889994458, -3.118191126500581),
        (-3.647182626894738, 7.471780741166546, -3.356878399103086),
    )),
}

# Tables of true and predicted coefficients: j -> (f_j, a_j, abs err, rel err %).
REFERENCE_TABLES = {
    "ex1": {
        5: (-.294, -.294, .001, .18),
        6: (-.330, -.332, .001, .38),
        7: (-.389, -.392, .002, .58),
        8: (-.475, -.478, .004, .76),
        9: (-.593, -.599, .006, .93),
        10: (-.756, -.765, .008, 1.10),
    },
    "ex2": {
        5: (67.938, 68.212, .274, .40),
        6: (120.739, 122.291, 1.552, 1.29),
        7: (218.459, 224.194, 5.735, 2.62),
        8: (400.498, 418.053, 17.555, 4.38),
        9: (741.657, 790.063, 48.406, 6.53),
        10: (1384.425, 1509.437, 125.012, 9.03),
    },
    "ex3": {
        8: (3.888956, 3.878509, .010447, .27),
        9: (5.356681, 5.301047, .055634, 1.04),
        10: (7.451679, 7.275227, .176452, 2.37),
        11: (10.447061, 10.006950, .440111, 4.21),
        12: (14.739132, 13.781978, .957155, 6.49),
        13: (20.903268, 18.995972, 1.907297, 9.12),
    },
}

SPECS = {"ex1": QUADRATIC, "ex2": QUADRATIC, "ex3": QUADRATIC_2}


@pytest.fixture(scope="session")
def example():
    """``example(name)`` -> (series with 40 terms, spec, fitted polynomial set)."""
    cache = {}

    def get(name):
        if name not in cache:
            f = taylor(EXAMPLES[name], 40)
            spec = SPECS[name]
            cache[name] = (f, spec, solve_hpp(f, spec))
        return cache[name]

    return get


_ACCEPTANCE = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
