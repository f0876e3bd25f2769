#pragma once

#include "torustame/cli.hpp"

namespace torustame::cli {

json job_to_json(const JobSpec& job);

}  // namespace torustame::cli
