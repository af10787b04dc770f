#pragma once

#include "cohclass/module.hpp"
#include "cohclass/sheaf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cohclass {

/// Parsed run configuration: one backend (a ring or the projective line),
/// its window, and the command inputs. Literals stay as raw strings until a
/// command needs them.
struct RunConfig {
    bool is_p1 = false;
    std::optional<Ring> ring;
    AffineWindow affine_window = PidWindow{};
    FieldTag field;
    SheafWindow sheaf_window;

    std::vector<std::string> objects;
    std::vector<std::string> pool;
    std::vector<std::string> phi;
    int threads = 1;
    std::string output;
};

RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace cohclass
