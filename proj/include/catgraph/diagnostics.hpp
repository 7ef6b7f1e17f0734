#pragma once

#include <functional>
#include <string_view>

namespace catgraph {

using WarningHandler = std::function<void(std::string_view)>;

// Non-fatal conditions (disconnected graph, walk coverage, skipped experiment
// cells) go through here. The default handler prints to stderr.
void warn(std::string_view message);

// Installs a handler and returns the previous one. Pass an empty function to
// silence warnings.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace catgraph
