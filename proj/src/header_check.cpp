// compile-only translation unit

#include "fracutm/checks.hpp"
#include "fracutm/config.hpp"
#include "fracutm/error.hpp"
#include "fracutm/faddeeva.hpp"
#include "fracutm/fraccalc.hpp"
#include "fracutm/function.hpp"
#include "fracutm/gamma.hpp"
#include "fracutm/parallel.hpp"
#include "fracutm/quadrature.hpp"
#include "fracutm/symbolgeo.hpp"
#include "fracutm/transforms.hpp"
#include "fracutm/utm.hpp"
