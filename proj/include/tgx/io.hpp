#pragma once

#include <string>
#include <string_view>

#include "tgx/temporal_graph.hpp"

namespace tgx {

// Text format:
//   tg 1
//   n <int>          (optional, defaults to 1 + largest vertex id mentioned)
//   L <int>          (optional, defaults to the last `t` block or 1)
//   source <vid>
//   k <int>          (optional, defaults to the total weight)
//   w <vid> <int>    (weight lines, default weight 1)
//   t <step>         (snapshot blocks in increasing order)
//   e <u> <v>
// `#` starts a comment.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

Instance read_instance_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

std::string stats_json(const Stats& s);

}  // namespace tgx
