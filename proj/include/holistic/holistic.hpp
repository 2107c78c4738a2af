#pragma once

// Umbrella header for the holistic finite-difference library.

#include "holistic/rational.hpp"
#include "holistic/h_coeff.hpp"
#include "holistic/xi_poly.hpp"
#include "holistic/bi_series.hpp"
#include "holistic/stencil.hpp"
#include "holistic/operator_series.hpp"
#include "holistic/basis_polynomials.hpp"
#include "holistic/field.hpp"
#include "holistic/model.hpp"
#include "holistic/pde_spec.hpp"
#include "holistic/closed_form.hpp"
#include "holistic/residual.hpp"
#include "holistic/iterative.hpp"
#include "holistic/equivalent_pde.hpp"
#include "holistic/coefficients.hpp"
#include "holistic/shanks.hpp"
#include "holistic/simulate.hpp"
#include "holistic/json_io.hpp"
#include "holistic/pde_grammar.hpp"
#include "holistic/reports.hpp"
