"""Reference data: the 31 cubic normal forms, their graphs and factorizations.

Graph arrows use letters: A is the double point, B..E the simple ones, and
"ED" means E is proximate to D.  Point lists start with the double point;
their order is the one the normalization steps refer to.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

LETTERS = "ABCDE"


@dataclass(frozen=True)
class NormalForm:
    number: int
    formula: str
    params: tuple
    arrows: tuple  # letter pairs
    line: Optional[str]  # letters on the line
    length: int  # shortest factorization length into sigma/rho/tau
    points: tuple  # texts of base points p0..p4
    frame: tuple  # indices matched by the first linear change
    conic: Optional[str] = None  # for conic-frame types: conic through all five points
    marks: tuple = ()  # proper points used as marks on the conic
    steps: tuple = ()  # (index, recipe) follow-up normalisations
    param_source: Optional[tuple] = None  # (index, how) for parametric types

    def graph_arcs(self) -> list[tuple[int, int]]:
        return [(LETTERS.index(a), LETTERS.index(b)) for a, b in self.arrows]

    def line_members(self) -> Optional[frozenset]:
        return None if self.line is None else frozenset(LETTERS.index(c) for c in self.line)


def _arr(s: str) -> tuple:
    return tuple(s.split()) if s else ()


P0 = "[0:0:1]"
_F = []


def _nf(number, formula, params, arrows, line, length, points, frame, **kw):
    _F.append(NormalForm(number, formula, tuple(params), _arr(arrows), line, length,
                         tuple(points), tuple(frame), **kw))


_nf(1, "[xz^2+y^3:yz^2:z^3]", (), "ED DC CB BA CA", None, 6,
    ["[1:0:0]", "([1:0:0],0)", "([1:0:0],0,inf)", "([1:0:0],0,inf,-1)", "([1:0:0],0,inf,-1,0)"],
    (0, 1), steps=((3, "neg_x"), (4, "shear_z")))
_nf(2, "[x(x^2+yz):y^3:y(x^2+yz)]", (), "ED DC CB BA", None, 5,
    [P0, f"({P0},0)", f"({P0},0,-1)", f"({P0},0,-1,0)", f"({P0},0,-1,0,0)"],
    (), conic="x^2+yz", marks=(0,))
_nf(3, "[xz^2:x^3+xyz:z^3]", (), "ED DC BA CA", None, 5,
    ["[0:1:0]", "([0:1:0],inf)", "([0:1:0],0)", "([0:1:0],0,-1)", "([0:1:0],0,-1,0)"],
    (0, 1, 2), steps=((3, "scale_xz"), (4, "shear_yx")))
_nf(4, "[x^2z:x^3+z^3+xyz:xz^2]", (), "ED DA CB BA", None, 4,
    ["[0:1:0]", "([0:1:0],inf)", "([0:1:0],0)", "([0:1:0],inf,-1)", "([0:1:0],0,-1)"],
    (0, 1, 2), steps=((3, "scale_x"), (4, "cube")))
_nf(5, "[x^2z:x^2y+z^3:xz^2]", (), "DC CB BA CA", None, 5,
    ["[0:1:0]", "[1:0:0]", "([0:1:0],inf)", "([0:1:0],inf,inf)", "([0:1:0],inf,inf,-1)"],
    (0, 1, 2, 3), steps=((4, "scale_y"),))
_nf(6, "[x^2(x-y):xy(x-y):xyz+y^3]", (), "DC BA CA", None, 4,
    [P0, "[1:1:-1]", f"({P0},0)", f"({P0},inf)", f"({P0},inf,-1)"],
    (0, 1, 2, 3), steps=((4, "mix_z"),))
_nf(7, "[x(x^2+yz):y(x^2+yz):xy^2]", (), "DC CB BA", None, 4,
    [P0, "[0:1:0]", f"({P0},0)", f"({P0},0,-1)", f"({P0},0,-1,0)"],
    (), conic="x^2+yz", marks=(0, 1))
_nf(8, "[xyz:yz^2:z^3-x^2y]", (), "ED DC CB", "BCD", 5,
    ["[0:1:0]", "[1:0:0]", "([1:0:0],inf)", "([1:0:0],inf,0)", "([1:0:0],inf,0,1)"],
    (0, 1, 2, 3), steps=((4, "scale_y"),))
_nf(9, "[y^2z:x(xz+y^2):y(xz+y^2)]", (), "ED DC CB", None, 4,
    [P0, "[1:0:0]", "([1:0:0],0)", "([1:0:0],0,-1)", "([1:0:0],0,-1,0)"],
    (), conic="xz+y^2", marks=(0, 1))
_nf(10, "[x^3:y^2z:xyz]", (), "ED DC BA", "CDE", 3,
    [P0, "[0:1:0]", f"({P0},0)", "([0:1:0],0)", "([0:1:0],0,0)"],
    (0, 1, 2, 3, 4))
_nf(11, "[x(y^2+xz):y(y^2+xz):xyz]", (), "ED DC BA", None, 3,
    [P0, "[1:0:0]", f"({P0},inf)", "([1:0:0],0)", "([1:0:0],0,-1)"],
    (), conic="xz+y^2", marks=(0, 1))
_nf(12, "[xz^2:x^2y:z^3]", (), "ED CB BA CA", None, 3,
    ["[0:1:0]", "[1:0:0]", "([0:1:0],inf)", "([1:0:0],inf)", "([0:1:0],inf,inf)"],
    (0, 1, 2, 3, 4))
_nf(13, "[x(y^2+xz):y(y^2+xz):xy^2]", (), "ED CB BA", None, 3,
    [P0, "[1:0:0]", "([1:0:0],0)", f"({P0},inf)", f"({P0},inf,-1)"],
    (), conic="xz+y^2", marks=(0, 1))
_nf(14, "[x^3:x^2y:(x-y)yz]", (), "ED BA CA", None, 3,
    [P0, "[0:1:0]", f"({P0},0)", f"({P0},1)", "([0:1:0],0)"],
    (0, 1, 2, 4), steps=((3, "scale_y"),))
_nf(15, "[x^2y:xy^2:(x-y)^2z]", (), "CB BA CA", None, 3,
    [P0, "[0:1:0]", "[1:0:0]", f"({P0},1)", f"({P0},1,inf)"],
    (0, 1, 2, 3, 4))
_nf(16, "[x(x^2+yz):y(x^2+yz):xy(x-y)]", (), "CB BA", None, 3,
    [P0, "[0:1:0]", "[1:1:-1]", f"({P0},0)", f"({P0},0,-1)"],
    (), conic="x^2+yz", marks=(0, 1, 2))
_nf(17, "[xyz:y^2z:x(y^2-xz)]", (), "ED DC", "BCD", 4,
    [P0, "[1:0:0]", "[0:1:0]", "([1:0:0],0)", "([1:0:0],0,1)"],
    (0, 1, 2, 3), steps=((4, "scale_x"),))
_nf(18, "[x^2(y-z):xy(y-z):y^2z]", (), "ED DC", "CDE", 3,
    [P0, "[1:0:0]", "[0:1:0]", "([1:0:0],1)", "([1:0:0],1,0)"],
    (0, 1, 2, 3, 4))
_nf(19, "[x(x^2+yz+xz):y(x^2+yz+xz):xyz]", (), "ED DC", None, 3,
    [P0, "[0:1:0]", "[1:0:-1]", "([0:1:0],0)", "([0:1:0],0,-1)"],
    (), conic="x^2+xz+yz", marks=(0, 1, 2))
_nf(20, "[x^2z:xyz:y^2(x-z)]", (), "ED CB", "BCD", 3,
    [P0, "[1:0:0]", "[0:1:0]", "([1:0:0],0)", "([0:1:0],1)"],
    (0, 1, 2, 3, 4))
_nf(21, "[x(xy+xz+yz):y(xy+xz+yz):xyz]", (), "ED CB", None, 2,
    [P0, "[1:0:0]", "[0:1:0]", "([1:0:0],-1)", "([0:1:0],-1)"],
    (), conic="xy+xz+yz", marks=(0, 1, 2))
_nf(22, "[xz(x+y):yz(x+y):xy^2]", (), "ED BA", "CDE", 3,
    [P0, "[1:0:0]", "[0:1:0]", f"({P0},-1)", "([1:0:0],0)"],
    (0, 1, 2, 3, 4))
_nf(23, "[x(x^2+xy+yz):y(x^2+xy+yz):xyz]", (), "ED BA", None, 2,
    [P0, "[0:1:0]", "[1:-1:0]", f"({P0},0)", "([0:1:0],-1)"],
    (), conic="x^2+xy+yz", marks=(0, 1, 2))
_nf(24, "[xyz:(y-x)yz:x(x-y)(y-z)]", (), "ED", "BCD", 3,
    [P0, "[1:0:0]", "[0:1:0]", "[1:1:0]", "([1:0:0],1)"],
    (0, 1, 2, 3, 4), steps=((4, "scale_z"),))
_nf(25, "[x(x+y)(y+z):y(x+y)(y+z):xyz]", (), "ED", "CDE", 2,
    [P0, "[1:0:0]", "[0:1:-1]", "[1:-1:0]", "([1:0:0],-1)"],
    (0, 1, 2, 3, 4))
_nf(26, "[x(γxz-γy^2-xy+y^2):γxy(z-y):γy^2(z-x)]", ("γ",), "ED", None, 2,
    [P0, "[1:0:0]", "[0:1:0]", "[1:1:1]", "([1:0:0],1/γ)"],
    (0, 1, 2, 3), param_source=(4, "inv"))
_nf(27, "[γx^2y:γxy^2:(x+y)(x+γy)z]", ("γ",), "BA CA", None, 2,
    [P0, "[0:1:0]", "[1:0:0]", f"({P0},-1)", f"({P0},-1/γ)"],
    (0, 1, 2, 3), param_source=(4, "neg_inv"))
_nf(28, "[xy(x-y):xz(y-γx):z(y+γx)(y-γx)]", ("γ",), "BA", "CDE", 3,
    [P0, "[0:1:0]", "[1:0:0]", "[1:1:0]", f"({P0},γ)"],
    (0, 1, 2, 3), param_source=(4, "id"))
_nf(29, "[xy(x-y):x(xy-γxy+γxz-yz):x^2y-γ^2x^2y+γ^2x^2z-y^2z]", ("γ",), "BA", None, 2,
    [P0, "[0:1:0]", "[1:0:0]", "[1:1:1]", f"({P0},γ)"],
    (0, 1, 2, 3), param_source=(4, "id"))
_nf(30, "[x(xy+γxz-xz-γy^2):γxz(x-y):γz(x-y)(x+y)]", ("γ",), "", "CDE", 2,
    [P0, "[0:1:0]", "[1:0:0]", "[γ:1:0]", "[1:1:1]"],
    (0, 1, 2, 4), param_source=(3, "ratio"))
_nf(31, "[ax(-abxz+aby^2-b^2xy+b^2xz+axy-ay^2):ax(-abxz+abyz+axy-ayz-bxy+bxz):"
        "-a^2bx^2z+a^2by^2z+a^2x^2y-a^2y^2z-b^2x^2y+b^2x^2z]", ("a", "b"), "", None, 2,
    [P0, "[0:1:0]", "[1:0:0]", "[1:1:1]", "[a:b:1]"],
    (0, 1, 2, 3), param_source=(4, "affine"))

NORMAL_FORMS = {f.number: f for f in _F}
PARAMETRIC = (26, 27, 28, 29, 30, 31)

# Types whose shortest length meets the height lower bound.
LENGTH_EQUALS_BOUND = frozenset({2, 7, 9, 10, 11, 12, 13, 15, 16, 18, 19, 21, 23, 25, 26, 27,
                                 29, 30, 31})
RHO = "[xy:z^2:yz]"
SIGMA = "[yz:xz:xy]"
TAU = "[x^2:xy:y^2-xz]"

# The 21 proximity graphs without line data, as arrow lists.
PLAIN_GRAPHS = {
    1: "ED DC CB BA CA", 2: "ED CB BA CA", 3: "DC CB BA CA", 4: "ED DA CB BA",
    5: "ED DC BA CA", 6: "ED DC CB BA", 7: "CB BA CA", 8: "DC BA CA", 9: "ED BA CA",
    10: "DC CB BA", 11: "ED CB BA", 12: "ED DC BA", 13: "ED DC CB", 14: "BA CA",
    15: "CB BA", 16: "ED BA", 17: "ED CB", 18: "ED DC", 19: "BA", 20: "ED", 21: "",
}

# Factorizations into linear maps and sigma, listed outermost first; the
# number of sigma factors equals the length of the map.
SIGMA_FACTORIZATIONS = {
    1: ["[27y+225z:12y:8x-8y]", "[2x+5y:5y-x:15x+15z]", "[2x+2z:5x:3x+10y-2z]",
        "[x-y:z+2y-x:2y]", "[z:z-2x:2x+2y-z]", "[x-y:z-x+y:2x-y]", "[y:y+z:x]"],
    2: ["[8y-8x:x+z:4x]", "[x+y:y:z-x]", "[2x:-y-2x:y+2x-2z]", "[y-x:x:x+z-y]",
        "[x:z-x:y]", "[x:z:x+y]"],
    3: ["[4y:4y+3x:4y+4z]", "[3x-z:z-y:y]", "[9z+3x:y:3z-y]", "[3y+4z-x:x-z:3x]",
        "[y+z:x-y+z:y-z]", "[2y:x+z:x-z]"],
    4: ["[y+z:x+2z:z-y]", "[2x:y-z:y+z]", "[y-4x-4z:x:z]", "[y+z:x:y-z]", "[2y:x+z:x-z]"],
    5: ["[4y+4z:12z+x+9y:6y+8z]", "[2y+z:-2x-z:2x+2z]", "[2y:2y-z+x:z-y]",
        "[2z+2x-y:2z-y:y]", "[y-x-z:2z+x:x+z]", "[x-z:y:z]"],
    6: ["[-2y-4x:4x:2x+y+2z]", "[x-2z:z:y]", "[y:z-2y-x:2x]", "[y-x:x+y:2z]",
        "[x-y:x+y:x+y+2z]"],
    7: ["[y-x:y:y-z]", "[x:z:z+y]", "[z:y-x-z:x]", "[x:y:x+z]", "[x:x+z:y-x]"],
    8: ["[2y:-4x-4y:8x+9y+z]", "[2x-2y:2y-x:x+2z]", "[x+y:x:z-y-2x]", "[x+y:-2x:2x+y+z]",
        "[2x+y:y:2x-y+2z]", "[-z:x+z:y+z]"],
    9: ["[z-y:x:z]", "[x:y+z:z]", "[x:x-y:z]", "[x:y+z:z]", "[x:z-y:y]"],
    10: ["[x+y:-y-z:y]", "[z-x:x+y:-y]", "[z:x-z:y+z-x]", "[x:x+z:x+y]"],
    11: ["[z:x:y]", "[x:x+z-y:z]", "[x:y+z:z]", "[x:z-y:y]"],
    12: ["[-x:x-z:x+y]", "[y-x:x:y+z]", "[y:x+y:z-x-y]", "[-z:x+z:y-z]"],
    13: ["[x:y:z]", "[z-y:z:x+z-y]", "[x:y+z:z]", "[z:x-y:y]"],
    14: ["[x+z:z:y]", "[x:z-y:z-x]", "[x:y+z:z]", "[y:z-x:x]"],
    15: ["[z-y:y+z:4y-4x]", "[x+y:y:z]", "[y-x+2z:x-y:x+y]", "[x:y:z]"],
    16: ["[-x:y:2y-z]", "[y:x:x+z]", "[x+z:-z:y-2x-2z]", "[x:x+z:y-x]"],
    17: ["[-y:x-y:3y+z]", "[x+y:y:z]", "[z:x:y-x+z]", "[x:y-x:z]", "[y:y+z:x-y]"],
    18: ["[x+z:z:z-y]", "[x:y+z:z]", "[y-x:z-y-x:x]", "[x:y:z]"],
    19: ["[x:z:-y]", "[y:z-y:x]", "[x:z:y-x]", "[x:x+z:y]"],
    20: ["[z-y:z:x+z]", "[x:y+z:z]", "[z-x-y:x-y:y]", "[x:y:z]"],
    21: ["[x:y:z]", "[x:y:x+y+z]", "[x:y:z]"],
    22: ["[y-2z:z:x+z]", "[x:y+z:z]", "[x+y-z:2x+y:-x-y]", "[x:y:z]"],
    23: ["[x:-y:z]", "[y+z:z:x+y+z]", "[z:x:-x-y]"],
    24: ["[x:y:z]", "[x+z:z-x:6z-4y]", "[x:y+z:z]", "[y-2x:2z-3y:y]"],
    25: ["[-x:z:y]", "[z:x+y:y+z]", "[z:y:-x-y]"],
    26: ["[γ(γx-2x+y)+x+z:γ(γx-x+y):γ(γx+y)]", "[γ((γ-1)x-γy+z):γ(y-x):γx]", "[x:y:z]"],
    27: ["[γ(γx+y):-γ(x+y):(γ-1)^2z]", "[γx+y:-x-y:(γ-1)z]", "[x:y:z]"],
    28: ["[z:γ^2(x+y):γ^2(x+γx+γy)]", "[x+γy-y:-γy:z]", "[x:x-γy:-γz]", "[x:y:z]"],
    29: ["[y+z:y-x:γ(y-x-z)-x+y+z]", "[x-y:x-γy:(1-γ)z-x+γy]", "[x:y:z]"],
    30: ["[γ^2x+(1-γ)y-z:γ(γx-y):γ((γ+1)x-y)]", "[γ(y+z)-y:y+z:x+z]", "[z-x:y-x:x]"],
    31: ["[a(a(x+(b-1)^2z)+by):a(ax+y):by-((b-1)z-x)a^2-(b((1-b)z-x)-y)a]",
         "[ax-by:y-x:(b-1)ax-b(a-1)y+(a-b)z]", "[x:y:z]"],
}

# Factorizations using rho and tau as well, outermost first.
MIXED_FACTORIZATIONS = {
    1: "[x:z:y] o rho o [z:y:x] o tau o [z:y:-x] o rho o [x:z:y]",
    2: "[x+z:y:z] o rho o [y-x:z:x] o tau o [y:x:-z]",
    3: "[z:x:y] o rho o [z:y:x] o tau o [z:x:-y]",
    4: "[y:z:x] o tau o [y:x:-z] o tau o [x:z:-y]",
    5: "[x:z:y] o tau o [-z:-y:x+z] o rho o [y-z:x:z]",
    6: "[-y:z:x] o rho o [x+y+2z:y+z:-z] o rho o [x+z:x:y-x]",
    7: "[-x-z:z:y] o rho o [-z-y:x+y+z:z] o rho o [z-x:y:x]",
    8: "[y:x:-z] o tau o [z:x+z:y] o rho o [x-z:y:z]",
    9: "[y:-x-z:z] o rho o [-2z-x:x+y+z:z] o rho o [x-y:z:y]",
    10: "[y:x+z:z] o rho o [z-y:x+z:y] o rho o [z-x:y:x]",
    11: "[x:z:z-y] o rho o [z:x+y+z:y] o rho o [z-y:x:y]",
    12: "[z:x+z:y] o rho o [x+z-y:z:y] o rho o [y-z:x:z]",
    13: "[z:y:x] o sigma o [y+x+z:z:y] o rho o [z-y:x:y]",
    14: "[y:y+z:-x] o rho o [x+z:z-y:y] o rho o [z-x:y:x]",
    15: "[x:z+x:y] o rho o [y:z:x-y] o sigma",
    16: "[x:z:y+z] o rho o [y:x-z-y:y+z] o sigma o [x+z:y-x:x]",
    17: "[y:x:-z] o tau o sigma",
    18: "[x+z:z:-y] o rho o [y-x:y-z:x] o sigma",
    19: "[z:x:y+z] o rho o [z:x-y-z:y] o sigma o [x+z:y:x]",
    20: "[y:z:x+z] o rho o [z-x-y:x:y] o sigma",
    22: "[y-z:z:x+z] o rho o [z-x-y:x:x+y] o sigma",
    24: "[y+z:-z:x-z] o rho o [x-y+z:y-x:x] o sigma",
    28: "[x:z-y:2γz-(1+γ)y] o rho o [(1-γ)z:x-y:x-γy] o sigma",
}

# rho, tau and a sample cubic written through sigma.
CLASSICAL = {
    "rho": "[x:z-y:z] o sigma o [x:y+z:z] o sigma o [x:y-z:z]",
    "tau": "[y-x:2y-x:x-y+z] o sigma o [x+z:x:y] o sigma o [-y:x-3y+z:x] o sigma o "
           "[x+z:x:y] o sigma o [y-x:-2x+z:2x-y]",
    7: "[x:z:y] o rho o [y:x+y:z] o rho o [z:y:x]",
}

# Linear maps permuting the parameter orbit, with the parameter they produce.
ORBIT_AUTS = {
    26: [("[y-x:y:y-z]", "γ/(γ-1)")],
    27: [("[x:γy:-γz]", "1/γ"), ("[y:x:-z]", "1/γ"), ("[γy:x:z]", "γ")],
    28: [("[x:x-y:z]", "1-γ"), ("[y:x:z]", "1/γ"), ("[x-y:x:z]", "1/(1-γ)"),
         ("[x-y:-y:z]", "γ/(γ-1)"), ("[y:y-x:z]", "γ/(γ-1)")],
    29: [("[x:x-y:x-z]", None), ("[y:x:z]", None), ("[x-y:x:x-z]", None),
         ("[y-x:y:y-z]", None), ("[y:y-x:y-z]", None)],
    30: [("[(γ-1)x:γy-x:(γ-1)z]", None), ("[y:x:z]", None), ("[γy-x:(γ-1)x:(γ-1)z]", None),
         ("[γy-x:(γ-1)y:(γ-1)z]", None), ("[(γ-1)y:γy-x:(γ-1)z]", None)],
}

# Twenty-four linear maps for the two-parameter family with the new (a, b).
ORBIT_AUTS_31 = [
    ("[x:y:z]", "a", "b"),
    ("[y:x:z]", "b", "a"),
    ("[bx:ay:abz]", "1/a", "1/b"),
    ("[ay:bx:abz]", "1/b", "1/a"),
    ("[x:x-y:x-z]", "a/(a-1)", "(a-b)/(a-1)"),
    ("[x-y:x:x-z]", "(a-b)/(a-1)", "a/(a-1)"),
    ("[x/a:(x-y)/(a-b):(x-z)/(a-1)]", "(a-1)/a", "(a-1)/(a-b)"),
    ("[(x-y)/(a-b):x/a:(x-z)/(a-1)]", "(a-1)/(a-b)", "(a-1)/a"),
    ("[y:y-x:y-z]", "b/(b-1)", "(b-a)/(b-1)"),
    ("[y-x:y:y-z]", "(b-a)/(b-1)", "b/(b-1)"),
    ("[y/b:(x-y)/(a-b):(y-z)/(b-1)]", "(b-1)/b", "(b-1)/(b-a)"),
    ("[(x-y)/(a-b):y/b:(y-z)/(b-1)]", "(b-1)/(b-a)", "(b-1)/b"),
    ("[bx-ay:bx:b(x-az)]", "(b-a)/(b(1-a))", "1/(1-a)"),
    ("[bx:bx-ay:b(x-az)]", "1/(1-a)", "(b-a)/(b(1-a))"),
    ("[(ay-bx)/(a-b):x:(az-x)/(a-1)]", "b(a-1)/(a-b)", "1-a"),
    ("[x:(ay-bx)/(a-b):(az-x)/(a-1)]", "1-a", "b(a-1)/(a-b)"),
    ("[ay-bx:ay:a(y-bz)]", "(a-b)/(a(1-b))", "1/(1-b)"),
    ("[ay:ay-bx:a(y-bz)]", "1/(1-b)", "(a-b)/(a(1-b))"),
    ("[(ay-bx)/(a-b):y:(bz-y)/(b-1)]", "a(1-b)/(a-b)", "1-b"),
    ("[y:(ay-bx)/(a-b):(bz-y)/(b-1)]", "1-b", "a(1-b)/(a-b)"),
    ("[y-x:(ay-bx)/a:(1-b)x/(a-1)+(b-a)z/(a-1)+y]", "(a-1)/(b-1)", "b(a-1)/(a(b-1))"),
    ("[(ay-bx)/a:y-x:(1-b)x/(a-1)+(b-a)z/(a-1)+y]", "b(a-1)/(a(b-1))", "(a-1)/(b-1)"),
    ("[y-x:(ay-bx)/b:(a-1)y/(b-1)+(b-a)z/(b-1)-x]", "(b-1)/(a-1)", "a(b-1)/(b(a-1))"),
    ("[(ay-bx)/b:y-x:(a-1)y/(b-1)+(b-a)z/(b-1)-x]", "a(b-1)/(b(a-1))", "(b-1)/(a-1)"),
]


@lru_cache(maxsize=None)
def normal_form_map(number: int):
    from .map_language import parse_map
    f = NORMAL_FORMS[number]
    return parse_map(f.formula, f.params)


@lru_cache(maxsize=None)
def normal_form_polys(number: int) -> tuple:
    """The formula's components as written, before normalization; these
    specialize correctly at every admissible parameter value."""
    from .map_language import parse_triple
    f = NORMAL_FORMS[number]
    return tuple(parse_triple(f.formula, f.params))


def normal_form_at(number: int, values: dict, value_params: tuple = ()):
    from .cremona import instantiate_polys
    if not values:
        return normal_form_map(number)
    return instantiate_polys(normal_form_polys(number), values, value_params)


# Type of the inverse map.
INVERSE = {1: 1, 2: 8, 3: 5, 4: 4, 5: 3, 6: 6, 7: 17, 8: 2, 9: 9, 10: 10, 11: 18, 12: 12,
           13: 20, 14: 15, 15: 14, 16: 24, 17: 7, 18: 11, 19: 19, 20: 13, 21: 21, 22: 22,
           23: 25, 24: 16, 25: 23, 26: 26, 27: 27, 28: 28, 29: 30, 30: 29, 31: 31}
