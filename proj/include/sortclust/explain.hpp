#pragma once

// Textual and structured explanations of a fitted model.

#include "sortclust/model.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sortclust {

/// Bumped whenever the wording of rendered reports changes.
inline constexpr int kExplainTemplateVersion = 1;

enum class ReportKind { summary, point, pair };

struct ExplainReport {
  ReportKind kind = ReportKind::summary;
  std::string text;
  nlohmann::json structured;
};

ExplainReport explain_summary(const ClusterModel& model);
ExplainReport explain_point(const ClusterModel& model, Index row);
ExplainReport explain_pair(const ClusterModel& model, Index row1, Index row2);

/// Renders the text of a report from its structured payload alone.
std::string render_report(const nlohmann::json& structured);

/// Minimum-weight path between two groups in the merge graph, with edge
/// weights equal to the distance between starting points. Only groups in the
/// cluster of `from` are traversed. Among equally
/// short paths the lexicographically smallest group sequence wins. Returns
/// nullopt when the groups are not connected.
std::optional<std::vector<Index>> shortest_group_path(const ClusterModel& model, Index from,
                                                      Index to);

/// "0 <-> 2 <-> 3"
std::string format_path(const std::vector<Index>& path);

}  // namespace sortclust
