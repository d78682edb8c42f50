#ifndef MAHLERKIT_MAHLERKIT_HPP
#define MAHLERKIT_MAHLERKIT_HPP

// Umbrella header: exact Mahler-equation toolkit.

#include "mahlerkit/errors.hpp"
#include "mahlerkit/rational.hpp"
#include "mahlerkit/poly.hpp"
#include "mahlerkit/ratfunc.hpp"
#include "mahlerkit/laurent.hpp"
#include "mahlerkit/linalg.hpp"
#include "mahlerkit/sectioning.hpp"
#include "mahlerkit/equation.hpp"
#include "mahlerkit/dependence.hpp"
#include "mahlerkit/system.hpp"
#include "mahlerkit/rationality.hpp"
#include "mahlerkit/probe.hpp"
#include "mahlerkit/parser.hpp"

#endif // MAHLERKIT_MAHLERKIT_HPP
