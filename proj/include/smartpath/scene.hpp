#pragma once

#include "smartpath/planner.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace smartpath {

class SceneError : public std::runtime_error {
public:
    SceneError(std::string field, const std::string& msg)
        : std::runtime_error(field + ": " + msg), field(std::move(field)) {}
    std::string field;
};

struct Scene {
    int dimension = 0;
    std::vector<ConvexPolyhedron> regions;
    std::vector<Waypoint> waypoints;
    std::vector<BridgeHint> hints;
    PlanOptions options;
    int seed = 0;
    int csv_samples = 1000;
};

inline constexpr const char* kSceneSchema = "smartpath/1";

// Schema and geometric checks; throws SceneError naming the offending field.
Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::string& path);

std::string path_json(const PlanResult& r);
std::string cert_json(const PlanResult& r, int seed);
std::string samples_csv(const BernsteinPath& path, int samples);
std::string plot_svg(const std::vector<ConvexPolyhedron>& regions, const PlanResult& r);

}  // namespace smartpath
