#pragma once

#include "rainbow/arrows.hpp"
#include "rainbow/bounds.hpp"
#include "rainbow/cache.hpp"
#include "rainbow/canonical.hpp"
#include "rainbow/chromatic.hpp"
#include "rainbow/enumerate.hpp"
#include "rainbow/families.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/graph6.hpp"
#include "rainbow/isomorphism.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/replication.hpp"
#include "rainbow/report.hpp"
#include "rainbow/search.hpp"
#include "rainbow/shorthand.hpp"
