#pragma once

// Umbrella header. report_json.hpp is left out so the core does not pull in a JSON dependency.

#include "bench.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "kernel.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
#include "properties.hpp"
#include "pwca.hpp"
#include "random.hpp"
#include "report.hpp"
#include "series.hpp"
