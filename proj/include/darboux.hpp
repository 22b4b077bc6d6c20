#ifndef DARBOUX_HPP
#define DARBOUX_HPP

#include "darboux/scalar.hpp"
#include "darboux/poly.hpp"
#include "darboux/parser.hpp"
#include "darboux/system.hpp"
#include "darboux/linalg.hpp"
#include "darboux/factor.hpp"
#include "darboux/gcd.hpp"
#include "darboux/eigen.hpp"
#include "darboux/partial_integral.hpp"
#include "darboux/verify.hpp"
#include "darboux/candidate.hpp"
#include "darboux/ansatz.hpp"
#include "darboux/search.hpp"
#include "darboux/integral.hpp"
#include "darboux/jacobi.hpp"
#include "darboux/inverse.hpp"
#include "darboux/numeric.hpp"
#include "darboux/numeric_expr.hpp"
#include "darboux/corpus.hpp"

#endif
