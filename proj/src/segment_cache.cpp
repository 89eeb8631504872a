#include "tilebars/segment_cache.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tilebars {
namespace {

using nlohmann::json;

constexpr const char* kFormatName = "tilebars-segment-cache";

json header_json(const SegmentCacheHeader& header) {
  return json{{"format", kFormatName},
              {"version", header.version},
              {"alpha", header.options.alpha},
              {"beta", header.options.beta},
              {"paragraph_snap", header.options.paragraph_snap},
              {"valleys_only", header.options.valleys_only},
              {"smoothing_width", header.options.smoothing_width}};
}

json document_json(const SegmentedDocument& doc) {
  json segments = json::array();
  for (const auto& seg : doc.segments) {
    json terms = json::object();
    for (const auto& [term, count] : seg.term_counts) terms[term] = count;
    segments.push_back(json{{"first", seg.first}, {"last", seg.last}, {"terms", std::move(terms)}});
  }
  return json{{"id", doc.doc_id}, {"segments", std::move(segments)}};
}

SegmentedDocument document_from_json(const json& j) {
  SegmentedDocument doc;
  doc.doc_id = j.at("id").get<std::string>();
  int previous_last = 0;
  for (const auto& s : j.at("segments")) {
    Segment seg;
    seg.index = static_cast<int>(doc.segments.size()) + 1;
    seg.first = s.at("first").get<int>();
    seg.last = s.at("last").get<int>();
    if (seg.first != previous_last + 1 || seg.last < seg.first) {
      throw std::runtime_error("segment spans are not contiguous");
    }
    previous_last = seg.last;
    for (const auto& [term, count] : s.at("terms").items()) {
      const auto value = count.get<std::int64_t>();
      if (value <= 0) throw std::runtime_error("non-positive term count");
      seg.term_counts[term] = value;
    }
    add_counts(doc.total_term_counts, seg.term_counts);
    doc.segments.push_back(std::move(seg));
  }
  return doc;
}

}  // namespace

std::string serialize_segment_cache(const std::vector<SegmentedDocument>& documents,
                                    const SegmentCacheHeader& header) {
  std::string out = header_json(header).dump();
  out.push_back('\n');
  for (const auto& doc : documents) {
    out += document_json(doc).dump();
    out.push_back('\n');
  }
  return out;
}

void save_segment_cache(const std::vector<SegmentedDocument>& documents, const SegmentCacheHeader& header,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write segment cache: " + path.string());
  out << serialize_segment_cache(documents, header);
  if (!out) throw InputError("failed writing segment cache: " + path.string());
}

SegmentCache parse_segment_cache(const std::string& contents, const std::string& source) {
  std::istringstream in(contents);
  SegmentCache cache;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string at = source + ":" + std::to_string(line_no);
    if (!have_header) {
      json h;
      try {
        h = json::parse(line);
      } catch (const json::exception&) {
        throw InputError(at + ": segment cache header is not valid JSON");
      }
      if (!h.is_object() || h.value("format", "") != kFormatName) {
        throw InputError(at + ": not a segment cache file");
      }
      const int version = h.value("version", -1);
      if (version != kSegmentCacheVersion) {
        throw InputError(at + ": segment cache version " + std::to_string(version) + " is not supported (expected " +
                         std::to_string(kSegmentCacheVersion) + ")");
      }
      cache.header.version = version;
      cache.header.options.alpha = h.value("alpha", 20);
      cache.header.options.beta = h.value("beta", 6);
      cache.header.options.paragraph_snap = h.value("paragraph_snap", 5);
      cache.header.options.valleys_only = h.value("valleys_only", true);
      cache.header.options.smoothing_width = h.value("smoothing_width", 0);
      have_header = true;
      continue;
    }
    try {
      cache.documents.push_back(document_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw InputError(at + ": corrupt segment cache line (" + e.what() + ")");
    }
  }
  if (!have_header) throw InputError(source + ": segment cache has no header");
  return cache;
}

SegmentCache load_segment_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read segment cache: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_segment_cache(text.str(), path.string());
}

std::optional<std::string> cache_parameter_mismatch(const SegmentCacheHeader& header,
                                                    const SegmenterOptions& expected) {
  if (header.options == expected) return std::nullopt;
  std::ostringstream msg;
  msg << "segment cache was built with alpha=" << header.options.alpha << " beta=" << header.options.beta
      << " snap=" << header.options.paragraph_snap << " valleys_only=" << header.options.valleys_only
      << " smoothing=" << header.options.smoothing_width << " but the run is configured with alpha="
      << expected.alpha << " beta=" << expected.beta << " snap=" << expected.paragraph_snap
      << " valleys_only=" << expected.valleys_only << " smoothing=" << expected.smoothing_width;
  return msg.str();
}

}  // namespace tilebars
