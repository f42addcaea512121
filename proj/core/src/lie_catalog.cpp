#include "contactred/lie_algebra.hpp"

namespace contactred {

// Embedded copy of data/lie_catalog.txt. A test asserts the two stay
// byte-identical, so edit both together.
const char* builtin_catalog_text() {
    return R"CATALOG(# Lie algebra catalog.
#
# Format, one algebra per block:
#   algebra <name>
#   torus <true|false>        torus=true: basis elements exponentiate to the
#                             standard circles, integral lattice = Z^dim
#   basis <name> <name> ...
#   c i j k p/q               [b_i, b_j] has coefficient p/q on b_k;
#                             antisymmetric completion is automatic,
#                             unspecified entries are zero
#   end
#
# Antisymmetry and the Jacobi identity are verified in exact rational
# arithmetic when a block is loaded.

algebra abelian1
torus true
basis t1
end

algebra abelian2
torus true
basis t1 t2
end

algebra abelian3
torus true
basis t1 t2 t3
end

algebra abelian4
torus true
basis t1 t2 t3 t4
end

algebra so3
torus false
basis e1 e2 e3
c 0 1 2 1
c 1 2 0 1
c 2 0 1 1
end

# Basis matrices: H = [[1,0],[0,-1]], E = [[0,1],[0,0]], F = [[0,0],[1,0]].
# Dual coordinates are taken against (H*, E*, F*). The trace pairing
# A -> tr(M A) sends the matrix M = [[0,1],[0,0]] (the basis element E) to
# the coordinate vector (0, 0, 1): tr(E A) reads off the F-coefficient of A.
algebra sl2
torus false
basis H E F
c 0 1 1 2
c 0 2 2 -2
c 1 2 0 1
end
)CATALOG";
}

} // namespace contactred
