#pragma once

#include "rational.hpp"
#include "diagram.hpp"
#include "domain.hpp"
#include "index.hpp"
#include "chains.hpp"
#include "surface.hpp"
#include "verify.hpp"
#include "report.hpp"
