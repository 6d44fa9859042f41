#pragma once

// Umbrella header: rank statistics, the grouping pipeline, data I/O.

#include "config.hpp"
#include "corpus.hpp"
#include "decimal.hpp"
#include "ecdf.hpp"
#include "errors.hpp"
#include "fixture.hpp"
#include "kendall.hpp"
#include "ks.hpp"
#include "numfmt.hpp"
#include "pipeline.hpp"
#include "registry.hpp"
#include "report_io.hpp"
#include "results_csv.hpp"
#include "summary.hpp"
