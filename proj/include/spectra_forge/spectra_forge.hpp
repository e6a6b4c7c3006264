#pragma once

#include "spectra_forge/algebra.hpp"
#include "spectra_forge/error.hpp"
#include "spectra_forge/finring.hpp"
#include "spectra_forge/graphs.hpp"
#include "spectra_forge/number_theory.hpp"
#include "spectra_forge/products.hpp"
#include "spectra_forge/spectra.hpp"
#include "spectra_forge/theorems.hpp"
