#pragma once

// Umbrella header: binary prime-reciprocal sequences, block-permutation
// hardening, autocorrelation metrics, and the seeded experiment harness.

#include "dseq/errors.hpp"
#include "dseq/harness.hpp"
#include "dseq/io.hpp"
#include "dseq/metrics.hpp"
#include "dseq/modular.hpp"
#include "dseq/permute.hpp"
#include "dseq/reports.hpp"
#include "dseq/rng.hpp"
#include "dseq/sequence.hpp"
#include "dseq/stat_tests.hpp"
