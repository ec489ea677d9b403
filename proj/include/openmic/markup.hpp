#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace openmic::markup {

// Stage-performance markers:
//   [pause]            pre-punchline beat, 500 ms
//   [pause:<ms>]       explicit silence, 100..5000 ms
//   [applause]         applause cue
//   [laughter]         laughter cue
//   [emphasis]...[/emphasis]
//   [pace:<rate>]...[/pace]   rate multiplier 0.5..2.0
//   [[                 literal '['

inline constexpr int kPauseMinMs = 100;
inline constexpr int kPauseMaxMs = 5000;
inline constexpr int kDefaultPauseMs = 500;
inline constexpr double kRateMin = 0.5;
inline constexpr double kRateMax = 2.0;

enum class NodeKind { Text, Pause, Applause, Laughter, Emphasis, Pace };

struct Node {
  NodeKind kind = NodeKind::Text;
  std::string text;            // Text
  int duration_ms = 0;         // Pause
  double rate = 1.0;           // Pace
  std::vector<Node> children;  // Emphasis / Pace

  bool operator==(const Node&) const = default;
};

struct AnnotatedScript {
  std::vector<Node> nodes;

  bool operator==(const AnnotatedScript&) const = default;
};

// Checked constructors. Parser output satisfies the same invariants.
Node text_node(std::string content);
Node pause_node(int duration_ms);
Node applause_node();
Node laughter_node();
Node emphasis_span(std::vector<Node> children);
Node pace_span(double rate, std::vector<Node> children);

struct ParseOptions {
  bool strict = true;  // lenient mode keeps unknown bracketed tokens as text
  int default_pause_ms = kDefaultPauseMs;
};

AnnotatedScript parse_markup(std::string_view text, const ParseOptions& options = {});

/// Canonical marker syntax; parse(render(ast)) is structurally equal to ast.
std::string render(const AnnotatedScript& ast);

/// Concatenation of all Text contents in document order, markers dropped.
std::string strip_plain(const AnnotatedScript& ast);

enum class SegmentKind { Speech, Silence, ApplauseCue, LaughterCue };

std::string_view segment_kind_name(SegmentKind kind);
SegmentKind segment_kind_from_string(std::string_view name);

struct Segment {
  SegmentKind kind = SegmentKind::Speech;
  std::int64_t start_ms = 0;
  std::int64_t duration_ms = 0;
  std::optional<std::string> text;
  bool emphasis = false;
  double rate = 1.0;

  bool operator==(const Segment&) const = default;
};

struct Timeline {
  int chars_per_minute = 0;
  std::vector<Segment> segments;

  std::int64_t total_ms() const;

  bool operator==(const Timeline&) const = default;
};

struct TimelineOptions {
  int applause_ms = 2000;
  int laughter_ms = 1500;
};

Timeline compile_timeline(const AnnotatedScript& ast, int chars_per_minute,
                          const TimelineOptions& options = {});

nlohmann::json timeline_to_json(const Timeline& timeline);
Timeline timeline_from_json(const nlohmann::json& doc);

void export_timeline(const Timeline& timeline, const std::filesystem::path& path);
Timeline import_timeline(const std::filesystem::path& path);

}  // namespace openmic::markup
