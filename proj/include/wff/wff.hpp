#pragma once

#include "wff/algebra.hpp"
#include "wff/dynamics.hpp"
#include "wff/frames.hpp"
#include "wff/measure.hpp"
#include "wff/system.hpp"
#include "wff/theory.hpp"
