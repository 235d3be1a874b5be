// Copyright 2026 The ledgerfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Food traceability: product, ingredient and logistics records keyed by food
// id. Records are serialized as JSON text by an HTML-safe encoder, which
// writes '<', '>' and '&' as \u003c, \u003e and \u0026. The query side of
// the test groups reads the stored text back as a plain string and only
// undoes \" and \\, so those three characters never round-trip.

#include <array>

#include "ledgerfuzz/targets.h"

namespace ledgerfuzz {

namespace {

constexpr std::uint32_t kSite = 0x5000;

struct RecordType {
  std::string_view json_name;
  std::string_view key_prefix;
  std::vector<std::string> fields;
};

const RecordType& ProductType() {
  static const RecordType t{"FoodInfo",
                            "pro_",
                            {"FoodID", "FoodName", "FoodSpec", "FoodMFGDate", "FoodEXPDate", "FoodLOT", "FoodNumber",
                             "FoodMaker", "FoodPrice", "FoodPlace"}};
  return t;
}

const RecordType& IngredientType() {
  static const RecordType t{"FoodIngInfo", "ing_", {"FoodID", "IngID", "IngName"}};
  return t;
}

const RecordType& LogisticsType() {
  static const RecordType t{"FoodLogInfo",
                            "log_",
                            {"FoodID", "LogDepartureTm", "LogArrivalTm", "LogMission", "LogDeparturePl", "LogDest",
                             "LogToSeller", "LogStorageTm", "LogMOT", "LogCopName", "LogCost"}};
  return t;
}

void AppendEscaped(StubHandle& stub, std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '"':
        stub.Cover(kSite + 20);
        out += "\\\"";
        break;
      case '\\':
        stub.Cover(kSite + 21);
        out += "\\\\";
        break;
      case '<':
        stub.Cover(kSite + 22);
        out += "\\u003c";
        break;
      case '>':
        stub.Cover(kSite + 23);
        out += "\\u003e";
        break;
      case '&':
        stub.Cover(kSite + 24);
        out += "\\u0026";
        break;
      default:
        out.push_back(c);
    }
  }
}

// {"<Type>":{"<Field>":"<value>",...}}
std::string Marshal(StubHandle& stub, const RecordType& type, ArgsView values) {
  std::string out = "{\"";
  out += type.json_name;
  out += "\":{";
  for (std::size_t i = 0; i < type.fields.size(); ++i) {
    if (i > 0) out += ',';
    out += '"';
    out += type.fields[i];
    out += "\":\"";
    AppendEscaped(stub, out, values[i]);
    out += '"';
  }
  out += "}}";
  return out;
}

EntryPoint AddRecord(const RecordType& type, std::uint32_t site) {
  return [&type, site](StubHandle& stub, ArgsView params) {
    stub.Cover(site);
    if (params.size() != type.fields.size()) {
      return ContractResponse::Error("Incorrect number of arguments. Expecting " + std::to_string(type.fields.size()));
    }
    if (params[0].empty()) {
      stub.Cover(site + 1);
      return ContractResponse::Error("FoodID must not be empty");
    }
    stub.PutState(std::string(type.key_prefix) + params[0], Marshal(stub, type, params));
    return ContractResponse::Ok();
  };
}

EntryPoint QueryRecord(const RecordType& type, std::uint32_t site) {
  return [&type, site](StubHandle& stub, ArgsView params) {
    stub.Cover(site);
    if (params.size() != 1) return ContractResponse::Error("Incorrect number of arguments. Expecting FoodID");
    auto stored = stub.GetState(std::string(type.key_prefix) + params[0]);
    if (!stored) {
      stub.Cover(site + 1);
      return ContractResponse::Error(std::string(type.json_name) + " not found for " + params[0]);
    }
    return ContractResponse::Ok(std::move(*stored));
  };
}

// Reads the field values out of a marshaled record as raw text. Only \" and
// \\ are undone.
std::optional<Args> ReadFieldsAsText(std::string_view text, const RecordType& type) {
  const std::string head = "{\"" + std::string(type.json_name) + "\":{";
  if (text.substr(0, head.size()) != head) return std::nullopt;
  std::size_t pos = head.size();
  Args values;
  for (std::size_t i = 0; i < type.fields.size(); ++i) {
    const std::string key = (i > 0 ? ",\"" : "\"") + type.fields[i] + "\":\"";
    if (text.substr(pos, key.size()) != key) return std::nullopt;
    pos += key.size();
    std::string value;
    while (pos < text.size() && text[pos] != '"') {
      if (text[pos] == '\\' && pos + 1 < text.size() && (text[pos + 1] == '"' || text[pos + 1] == '\\')) ++pos;
      value.push_back(text[pos++]);
    }
    if (pos >= text.size()) return std::nullopt;
    ++pos;
    values.push_back(std::move(value));
  }
  if (text.substr(pos) != "}}") return std::nullopt;
  return values;
}

TestGroup MakeGroup(std::string name, std::string publish, std::string query, const RecordType& type,
                    std::vector<ParamKind> kinds) {
  TestGroup g;
  g.name = std::move(name);
  g.publish_fn = std::move(publish);
  g.query_fn = std::move(query);
  g.arity = type.fields.size();
  g.key_index = 0;
  g.kinds = std::move(kinds);
  g.compare = [&type](ArgsView published, std::string_view payload) -> std::optional<FieldMismatch> {
    const auto values = ReadFieldsAsText(payload, type);
    if (!values) return FieldMismatch{std::string(type.json_name), "well-formed record", std::string(payload)};
    for (std::size_t i = 0; i < values->size(); ++i) {
      if ((*values)[i] != published[i]) return FieldMismatch{type.fields[i], published[i], (*values)[i]};
    }
    return std::nullopt;
  };
  return g;
}

ContractResponse Init(StubHandle& stub, ArgsView) {
  stub.Cover(kSite);
  return ContractResponse::Ok();
}

}  // namespace

TargetSpec TargetFoodtrace() {
  static const FunctionTable table = FunctionTable()
                                         .Add("addProInfo", AddRecord(ProductType(), kSite + 1))
                                         .Add("queryProInfo", QueryRecord(ProductType(), kSite + 3))
                                         .Add("addIngInfo", AddRecord(IngredientType(), kSite + 5))
                                         .Add("queryIngInfo", QueryRecord(IngredientType(), kSite + 7))
                                         .Add("addLogInfo", AddRecord(LogisticsType(), kSite + 9))
                                         .Add("queryLogInfo", QueryRecord(LogisticsType(), kSite + 11));
  TargetSpec spec;
  spec.contract = Contract{"foodtrace", Init, [](StubHandle& stub, ArgsView args) { return table.Route(stub, args); }};

  using K = ParamKind;
  spec.groups = {
      MakeGroup("product", "addProInfo", "queryProInfo", ProductType(),
                {K::kId, K::kWord, K::kNumber, K::kDate, K::kDate, K::kId, K::kId, K::kWord, K::kNumber, K::kWord}),
      MakeGroup("ingredient", "addIngInfo", "queryIngInfo", IngredientType(), {K::kId, K::kId, K::kWord}),
      MakeGroup("logistics", "addLogInfo", "queryLogInfo", LogisticsType(),
                {K::kId, K::kDate, K::kDate, K::kWord, K::kWord, K::kWord, K::kWord, K::kWord, K::kWord, K::kWord,
                 K::kNumber}),
  };
  spec.seeds = {
      {"F1",
       {"addProInfo", "001", "MiGao", "1", "2020-01-01", "2020-07-01", "MP01", "FX1234", "MiGao", "$10", "Shanxi"}},
      {"I1", {"addIngInfo", "001", "M1", "NuoMi"}},
      {"L1",
       {"addLogInfo", "001", "2020-01-02", "2020-01-02", "transport", "Shanxi", "Shaanxi", "MiGao", "10 days",
        "Road transport", "China Logistics Company Beijing", "$190"}},
  };
  spec.literals = {"addProInfo", "queryProInfo", "addIngInfo", "queryIngInfo", "addLogInfo", "queryLogInfo",
                   "FoodID",     "IngID",        "001"};
  spec.expected_bugs = {{CrashKind::kOracleMismatch, "Failed"}};
  spec.witnesses = {
      {"IngID >", 1, {"001", ">", "NuoMi"}, CrashKind::kOracleMismatch, "addIngInfo Failed"},
  };
  return spec;
}

}  // namespace ledgerfuzz
