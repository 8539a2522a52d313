#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "expreg/mso.hpp"
#include "expreg/xlate.hpp"

namespace expreg {

using Json = nlohmann::json;

/// {"op":"existsMon","var":"X","colours":[...],"body":{...}} and friends.
Json formula_to_json(const mso::Formula& f);
mso::Formula formula_from_json(const Json& j);

/// Every document carries "kind". Models without a table or formula form throw
/// NotSerializable; translated models are written as generator documents
/// ("generator" + "source") by `translated_document` instead.
Json model_to_json(const Model& m);
/// Schema problems throw UsageError; generator documents are rebuilt from their source.
Model model_from_json(const Json& j);

/// Generator document for translating `source` to `to` (ariadne | althennie | setinterp).
/// Throws UsageError for unsupported pairs.
Json translated_document(const Json& source, std::string_view to);
std::string document_kind(const Json& j);

Json read_json_file(const std::string& path); // throws UsageError
void write_json_file(const std::string& path, const Json& j);

/// Named model documents for every built-in fixture (file name -> document).
std::vector<std::pair<std::string, Json>> fixture_documents();

} // namespace expreg
