#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tilebars/segmentation.hpp"

namespace tilebars {

inline constexpr int kSegmentCacheVersion = 1;

/// Segmentation parameters recorded in the cache header.
struct SegmentCacheHeader {
  int version = kSegmentCacheVersion;
  SegmenterOptions options;

  bool operator==(const SegmentCacheHeader&) const = default;
};

struct SegmentCache {
  SegmentCacheHeader header;
  std::vector<SegmentedDocument> documents;
};

/// Line 1 is a JSON header; every further line is one JSON document
///   {"id":...,"segments":[{"first":f,"last":l,"terms":{term:count,...}},...]}
/// Keys are sorted, so equal inputs give byte-identical files.
void save_segment_cache(const std::vector<SegmentedDocument>& documents, const SegmentCacheHeader& header,
                        const std::filesystem::path& path);

std::string serialize_segment_cache(const std::vector<SegmentedDocument>& documents,
                                    const SegmentCacheHeader& header);

/// Throws InputError on version mismatch or a corrupt line.
SegmentCache load_segment_cache(const std::filesystem::path& path);

SegmentCache parse_segment_cache(const std::string& contents, const std::string& source = "<memory>");

/// Warning text when the cached segmentation used different parameters
/// than `expected`, nullopt when they agree.
std::optional<std::string> cache_parameter_mismatch(const SegmentCacheHeader& header,
                                                    const SegmenterOptions& expected);

}  // namespace tilebars
