#pragma once

#include "cawcoref/assignment.hpp"
#include "cawcoref/clustering.hpp"
#include "cawcoref/conll.hpp"
#include "cawcoref/demo.hpp"
#include "cawcoref/document.hpp"
#include "cawcoref/error.hpp"
#include "cawcoref/fixtures.hpp"
#include "cawcoref/headword.hpp"
#include "cawcoref/jsonlines.hpp"
#include "cawcoref/metrics.hpp"
#include "cawcoref/parallel.hpp"
#include "cawcoref/span_extract.hpp"
#include "cawcoref/wl_dataset.hpp"

namespace cawcoref {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cawcoref
