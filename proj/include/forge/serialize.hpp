#pragma once

#include "forge/embed.hpp"
#include "forge/morphism.hpp"

#include <json.hpp>

#include <string>

namespace forge {

using Json = nlohmann::json;

inline constexpr const char* kFormatTag = "ff/1";

// Writers. Every document carries {"format": "ff/1", "type": ...}; rationals
// are {"num": "<decimal>", "den": "<decimal>"} so no integer width is lost.
[[nodiscard]] Json to_json(const Rat& r);
[[nodiscard]] Json to_json(const SampleSpace& s);
[[nodiscard]] Json blocks_to_json(const SampleSpace& s, const Partition& p);
[[nodiscard]] Json to_json(const SampleSpace& s, const Partition& p);  // standalone document
[[nodiscard]] Json to_json(const Filtration1P& f);
[[nodiscard]] Json to_json(const BiFiltration& bf);
[[nodiscard]] Json to_json(const Martingale1P& m);
[[nodiscard]] Json to_json(const Martingale2P& m);
[[nodiscard]] Json to_json(const CanonicalModel1P& m);
[[nodiscard]] Json to_json(const CanonicalModel2P& m);
[[nodiscard]] Json to_json(const MorphismCertificate& c);
[[nodiscard]] Json sequence_to_json(const std::vector<SimpleFunction>& fs);

// Readers throw Error(Errc::input) with a JSON-pointer-style path on schema
// violations. `notes`, when given, collects ingestion remarks (e.g. stripped
// zero-weight points).
[[nodiscard]] Rat rat_from_json(const Json& j, const std::string& path);
[[nodiscard]] SampleSpace space_from_json(const Json& j, const std::string& path = "",
                                          std::vector<std::string>* notes = nullptr);
[[nodiscard]] Partition partition_from_json(const Json& j, const SampleSpace& s,
                                            const std::string& path);
[[nodiscard]] Filtration1P filtration_from_json(const Json& j, const std::string& path = "",
                                                std::vector<std::string>* notes = nullptr);
[[nodiscard]] BiFiltration bifiltration_from_json(const Json& j, const std::string& path = "",
                                                  std::vector<std::string>* notes = nullptr);
[[nodiscard]] Martingale1P martingale1p_from_json(const Json& j, const std::string& path = "",
                                                  std::vector<std::string>* notes = nullptr);
[[nodiscard]] Martingale2P martingale2p_from_json(const Json& j, const std::string& path = "",
                                                  std::vector<std::string>* notes = nullptr);
/// Rebuilds the model from its embedded source and cross-checks the stored
/// atom table (weights, coordinates, images) against the rebuild.
[[nodiscard]] CanonicalModel1P model1p_from_json(const Json& j, const std::string& path = "");
[[nodiscard]] CanonicalModel2P model2p_from_json(const Json& j, const std::string& path = "");
[[nodiscard]] std::vector<SimpleFunction> sequence_from_json(const Json& j,
                                                             const Filtration1P& canonical,
                                                             const std::string& path = "");

[[nodiscard]] std::string document_type(const Json& j);
[[nodiscard]] Json load_document(const std::string& file_path);
void save_document(const Json& j, const std::string& file_path);

}  // namespace forge
