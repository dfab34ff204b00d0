#pragma once

#include "smartpath/planner.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace smartpath {

enum ExitCode { kExitOk = 0, kExitSchema = 2, kExitPlanning = 3, kExitCertification = 4 };

struct CliFlags {
    std::optional<DegreeMode> mode;
    std::optional<int> nu_cap;
    std::optional<int> samples;
    std::optional<int> seed;
    std::string out = ".";
};

int cmd_plan(const std::string& scene_path, const CliFlags& flags, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& scene_path, std::ostream& out, std::ostream& err);
int cmd_rates(const CliFlags& flags, std::ostream& out, std::ostream& err);

}  // namespace smartpath
