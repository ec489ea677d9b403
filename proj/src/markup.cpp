#include "openmic/markup.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "openmic/errors.hpp"
#include "openmic/text.hpp"

namespace openmic::markup {

namespace {

void require(bool ok, Err code, const std::string& message) {
  if (!ok) throw OpenMicError(code, message);
}

}  // namespace

Node text_node(std::string content) {
  require(!content.empty(), Err::InvariantViolation, "text node must not be empty");
  Node n;
  n.kind = NodeKind::Text;
  n.text = std::move(content);
  return n;
}

Node pause_node(int duration_ms) {
  require(duration_ms >= kPauseMinMs && duration_ms <= kPauseMaxMs, Err::MalformedDuration,
          "pause duration " + std::to_string(duration_ms) + " ms outside [" +
              std::to_string(kPauseMinMs) + "," + std::to_string(kPauseMaxMs) + "]");
  Node n;
  n.kind = NodeKind::Pause;
  n.duration_ms = duration_ms;
  return n;
}

Node applause_node() {
  Node n;
  n.kind = NodeKind::Applause;
  return n;
}

Node laughter_node() {
  Node n;
  n.kind = NodeKind::Laughter;
  return n;
}

Node emphasis_span(std::vector<Node> children) {
  require(!children.empty(), Err::InvariantViolation, "emphasis span must not be empty");
  Node n;
  n.kind = NodeKind::Emphasis;
  n.children = std::move(children);
  return n;
}

Node pace_span(double rate, std::vector<Node> children) {
  require(rate >= kRateMin && rate <= kRateMax, Err::MalformedDuration,
          "pace rate " + std::to_string(rate) + " outside [0.5,2.0]");
  require(!children.empty(), Err::InvariantViolation, "pace span must not be empty");
  Node n;
  n.kind = NodeKind::Pace;
  n.rate = rate;
  n.children = std::move(children);
  return n;
}

namespace {

struct Parser {
  const std::vector<char32_t> cps;
  const ParseOptions options;
  std::size_t i = 0;
  int line = 1;
  int column = 1;

  Parser(std::string_view text, const ParseOptions& opts) : cps(utf8_decode(text)), options(opts) {}

  [[noreturn]] void fail(Err code, const std::string& message) const {
    throw MarkupError(code, message, line, column);
  }

  void advance(std::size_t count) {
    for (std::size_t k = 0; k < count && i < cps.size(); ++k, ++i) {
      if (cps[i] == U'\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  }

  // Scans a bracket run "[token]" starting at '['. Returns the ASCII token
  // (without brackets), or nullopt when the run never closes or contains
  // characters that cannot belong to a marker.
  std::optional<std::string> peek_marker_token(std::size_t& end_index) const {
    std::string token;
    std::size_t j = i + 1;
    while (j < cps.size()) {
      char32_t cp = cps[j];
      if (cp == U']') {
        end_index = j;
        return token;
      }
      const bool marker_char = (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') ||
                               (cp >= U'0' && cp <= U'9') || cp == U':' || cp == U'/' ||
                               cp == U'.' || cp == U'_' || cp == U'-';
      if (!marker_char) return std::nullopt;
      token.push_back(static_cast<char>(cp));
      ++j;
    }
    return std::nullopt;
  }

  AnnotatedScript parse() {
    struct OpenSpan {
      NodeKind kind;
      double rate;
      std::vector<Node> nodes;
      int line;
      int column;
    };
    std::vector<OpenSpan> stack;
    std::vector<Node> top;
    std::string pending_text;

    auto sink = [&]() -> std::vector<Node>& { return stack.empty() ? top : stack.back().nodes; };
    auto flush_text = [&]() {
      if (!pending_text.empty()) {
        sink().push_back(text_node(std::move(pending_text)));
        pending_text.clear();
      }
    };
    auto emit_literal = [&](char32_t cp) { utf8_append(pending_text, cp); };

    while (i < cps.size()) {
      char32_t cp = cps[i];
      if (cp != U'[') {
        emit_literal(cp);
        advance(1);
        continue;
      }
      if (i + 1 < cps.size() && cps[i + 1] == U'[') {
        emit_literal(U'[');
        advance(2);
        continue;
      }
      std::size_t end_index = 0;
      std::optional<std::string> token = peek_marker_token(end_index);
      if (!token.has_value()) {
        if (options.strict) fail(Err::UnknownMarker, "unterminated '[' (escape literal '[' as '[[')");
        emit_literal(U'[');
        advance(1);
        continue;
      }

      const std::string& t = *token;
      const std::size_t token_len = end_index - i + 1;
      const int marker_line = line;
      const int marker_column = column;

      auto malformed = [&](const std::string& message) -> void {
        if (options.strict) fail(Err::MalformedDuration, message);
      };
      auto as_literal = [&]() {
        emit_literal(U'[');
        advance(1);
      };

      if (t == "pause" || t.rfind("pause:", 0) == 0) {
        int ms = options.default_pause_ms;
        if (t != "pause") {
          const std::string payload = t.substr(6);
          try {
            std::size_t used = 0;
            ms = std::stoi(payload, &used);
            if (used != payload.size()) throw std::invalid_argument(payload);
          } catch (const std::exception&) {
            malformed("malformed pause duration '" + payload + "'");
            as_literal();
            continue;
          }
        }
        if (ms < kPauseMinMs || ms > kPauseMaxMs) {
          malformed("pause duration " + std::to_string(ms) + " ms outside [100,5000]");
          as_literal();
          continue;
        }
        flush_text();
        sink().push_back(pause_node(ms));
        advance(token_len);
      } else if (t == "applause") {
        flush_text();
        sink().push_back(applause_node());
        advance(token_len);
      } else if (t == "laughter") {
        flush_text();
        sink().push_back(laughter_node());
        advance(token_len);
      } else if (t == "emphasis") {
        flush_text();
        stack.push_back({NodeKind::Emphasis, 1.0, {}, marker_line, marker_column});
        advance(token_len);
      } else if (t.rfind("pace:", 0) == 0) {
        const std::string payload = t.substr(5);
        double rate = 0.0;
        try {
          std::size_t used = 0;
          rate = std::stod(payload, &used);
          if (used != payload.size()) throw std::invalid_argument(payload);
        } catch (const std::exception&) {
          malformed("malformed pace rate '" + payload + "'");
          as_literal();
          continue;
        }
        if (rate < kRateMin || rate > kRateMax) {
          malformed("pace rate " + payload + " outside [0.5,2.0]");
          as_literal();
          continue;
        }
        flush_text();
        stack.push_back({NodeKind::Pace, rate, {}, marker_line, marker_column});
        advance(token_len);
      } else if (t == "/emphasis" || t == "/pace") {
        const NodeKind want = (t == "/emphasis") ? NodeKind::Emphasis : NodeKind::Pace;
        flush_text();
        if (stack.empty()) fail(Err::NestingViolation, "'[" + t + "]' without an open span");
        if (stack.back().kind != want) {
          fail(Err::NestingViolation, "'[" + t + "]' crosses an open '" +
                                          (stack.back().kind == NodeKind::Emphasis ? std::string("emphasis")
                                                                                   : std::string("pace")) +
                                          "' span");
        }
        OpenSpan span = std::move(stack.back());
        stack.pop_back();
        advance(token_len);
        if (span.nodes.empty()) continue;  // empty spans canonicalize away
        Node node = (want == NodeKind::Emphasis) ? emphasis_span(std::move(span.nodes))
                                                 : pace_span(span.rate, std::move(span.nodes));
        sink().push_back(std::move(node));
      } else {
        if (options.strict) fail(Err::UnknownMarker, "unknown marker '[" + t + "]'");
        as_literal();
      }
    }

    if (!stack.empty()) {
      const auto& open = stack.back();
      throw MarkupError(Err::UnclosedSpan,
                        std::string("unclosed '") +
                            (open.kind == NodeKind::Emphasis ? "emphasis" : "pace") +
                            "' span opened",
                        open.line, open.column);
    }
    flush_text();
    return AnnotatedScript{std::move(top)};
  }
};

void render_nodes(const std::vector<Node>& nodes, std::string& out) {
  for (const Node& node : nodes) {
    switch (node.kind) {
      case NodeKind::Text:
        out += replace_all(node.text, "[", "[[");
        break;
      case NodeKind::Pause:
        out += "[pause:" + std::to_string(node.duration_ms) + "]";
        break;
      case NodeKind::Applause:
        out += "[applause]";
        break;
      case NodeKind::Laughter:
        out += "[laughter]";
        break;
      case NodeKind::Emphasis:
        out += "[emphasis]";
        render_nodes(node.children, out);
        out += "[/emphasis]";
        break;
      case NodeKind::Pace:
        // json dump gives the shortest representation that round-trips.
        out += "[pace:" + nlohmann::json(node.rate).dump() + "]";
        render_nodes(node.children, out);
        out += "[/pace]";
        break;
    }
  }
}

void strip_nodes(const std::vector<Node>& nodes, std::string& out) {
  for (const Node& node : nodes) {
    if (node.kind == NodeKind::Text) {
      out += node.text;
    } else if (!node.children.empty()) {
      strip_nodes(node.children, out);
    }
  }
}

void compile_nodes(const std::vector<Node>& nodes, int cpm, const TimelineOptions& options,
                   bool emphasis, double rate, std::vector<Segment>& out) {
  for (const Node& node : nodes) {
    switch (node.kind) {
      case NodeKind::Text: {
        const std::size_t chars = speakable_count_plain(node.text);
        if (chars == 0) break;
        auto duration = static_cast<std::int64_t>(
            std::llround(60000.0 * static_cast<double>(chars) / (static_cast<double>(cpm) * rate)));
        if (duration < 1) duration = 1;
        Segment seg;
        seg.kind = SegmentKind::Speech;
        seg.duration_ms = duration;
        seg.text = node.text;
        seg.emphasis = emphasis;
        seg.rate = rate;
        out.push_back(std::move(seg));
        break;
      }
      case NodeKind::Pause: {
        Segment seg;
        seg.kind = SegmentKind::Silence;
        seg.duration_ms = node.duration_ms;
        out.push_back(std::move(seg));
        break;
      }
      case NodeKind::Applause: {
        Segment seg;
        seg.kind = SegmentKind::ApplauseCue;
        seg.duration_ms = options.applause_ms;
        out.push_back(std::move(seg));
        break;
      }
      case NodeKind::Laughter: {
        Segment seg;
        seg.kind = SegmentKind::LaughterCue;
        seg.duration_ms = options.laughter_ms;
        out.push_back(std::move(seg));
        break;
      }
      case NodeKind::Emphasis:
        compile_nodes(node.children, cpm, options, true, rate, out);
        break;
      case NodeKind::Pace:
        // The innermost pace directive governs its own text.
        compile_nodes(node.children, cpm, options, emphasis, node.rate, out);
        break;
    }
  }
}

}  // namespace

AnnotatedScript parse_markup(std::string_view text, const ParseOptions& options) {
  Parser parser(text, options);
  return parser.parse();
}

std::string render(const AnnotatedScript& ast) {
  std::string out;
  render_nodes(ast.nodes, out);
  return out;
}

std::string strip_plain(const AnnotatedScript& ast) {
  std::string out;
  strip_nodes(ast.nodes, out);
  return out;
}

std::string_view segment_kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Speech: return "speech";
    case SegmentKind::Silence: return "silence";
    case SegmentKind::ApplauseCue: return "applause_cue";
    case SegmentKind::LaughterCue: return "laughter_cue";
  }
  return "speech";
}

SegmentKind segment_kind_from_string(std::string_view name) {
  if (name == "speech") return SegmentKind::Speech;
  if (name == "silence") return SegmentKind::Silence;
  if (name == "applause_cue") return SegmentKind::ApplauseCue;
  if (name == "laughter_cue") return SegmentKind::LaughterCue;
  throw OpenMicError(Err::Protocol, "unknown segment kind '" + std::string(name) + "'");
}

std::int64_t Timeline::total_ms() const {
  std::int64_t total = 0;
  for (const Segment& segment : segments) total += segment.duration_ms;
  return total;
}

Timeline compile_timeline(const AnnotatedScript& ast, int chars_per_minute,
                          const TimelineOptions& options) {
  if (chars_per_minute <= 0) {
    throw OpenMicError(Err::Config, "chars_per_minute must be positive");
  }
  Timeline timeline;
  timeline.chars_per_minute = chars_per_minute;
  compile_nodes(ast.nodes, chars_per_minute, options, false, 1.0, timeline.segments);
  if (timeline.segments.empty()) {
    throw OpenMicError(Err::EmptyScript, "script compiles to zero timeline segments");
  }
  std::int64_t cursor = 0;
  for (Segment& segment : timeline.segments) {
    segment.start_ms = cursor;
    cursor += segment.duration_ms;
  }
  return timeline;
}

nlohmann::json timeline_to_json(const Timeline& timeline) {
  nlohmann::json segments = nlohmann::json::array();
  for (const Segment& segment : timeline.segments) {
    segments.push_back({
        {"kind", segment_kind_name(segment.kind)},
        {"start_ms", segment.start_ms},
        {"duration_ms", segment.duration_ms},
        {"text", segment.text.has_value() ? nlohmann::json(*segment.text) : nlohmann::json()},
        {"emphasis", segment.emphasis},
        {"rate", segment.rate},
    });
  }
  return {
      {"chars_per_minute", timeline.chars_per_minute},
      {"total_ms", timeline.total_ms()},
      {"segments", segments},
  };
}

Timeline timeline_from_json(const nlohmann::json& doc) {
  Timeline timeline;
  try {
    timeline.chars_per_minute = doc.at("chars_per_minute").get<int>();
    for (const nlohmann::json& item : doc.at("segments")) {
      Segment segment;
      segment.kind = segment_kind_from_string(item.at("kind").get<std::string>());
      segment.start_ms = item.at("start_ms").get<std::int64_t>();
      segment.duration_ms = item.at("duration_ms").get<std::int64_t>();
      if (!item.at("text").is_null()) segment.text = item.at("text").get<std::string>();
      segment.emphasis = item.at("emphasis").get<bool>();
      segment.rate = item.at("rate").get<double>();
      timeline.segments.push_back(std::move(segment));
    }
    const auto total = doc.at("total_ms").get<std::int64_t>();
    if (total != timeline.total_ms()) {
      throw OpenMicError(Err::Protocol, "timeline total_ms does not match segment durations");
    }
  } catch (const nlohmann::json::exception& e) {
    throw OpenMicError(Err::Protocol, std::string("malformed timeline document: ") + e.what());
  }
  std::int64_t cursor = 0;
  for (const Segment& segment : timeline.segments) {
    if (segment.duration_ms <= 0) {
      throw OpenMicError(Err::Protocol, "timeline segment with non-positive duration");
    }
    if (segment.start_ms != cursor) {
      throw OpenMicError(Err::Protocol, "timeline segments are not contiguous");
    }
    cursor += segment.duration_ms;
  }
  return timeline;
}

void export_timeline(const Timeline& timeline, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw OpenMicError(Err::Io, "cannot open '" + path.string() + "' for writing");
  out << timeline_to_json(timeline).dump(2) << "\n";
  if (!out) throw OpenMicError(Err::Io, "failed writing '" + path.string() + "'");
}

Timeline import_timeline(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw OpenMicError(Err::Io, "cannot open '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw OpenMicError(Err::Protocol, std::string("malformed timeline JSON: ") + e.what());
  }
  return timeline_from_json(doc);
}

}  // namespace openmic::markup
