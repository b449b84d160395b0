#pragma once

#include "hmt/constants.hpp"
#include "hmt/functionals.hpp"
#include "hmt/geometry.hpp"
#include "hmt/lemma.hpp"
#include "hmt/profile.hpp"
#include "hmt/quadrature.hpp"
#include "hmt/report.hpp"
#include "hmt/sequences.hpp"
