#pragma once

#include "wfgroup/algorithms.hpp"
#include "wfgroup/error.hpp"
#include "wfgroup/generator.hpp"
#include "wfgroup/graph.hpp"
#include "wfgroup/graph_build.hpp"
#include "wfgroup/metrics.hpp"
#include "wfgroup/pipeline.hpp"
#include "wfgroup/report.hpp"
#include "wfgroup/workflow.hpp"
