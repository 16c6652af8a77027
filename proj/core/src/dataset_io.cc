// Copyright 2026 The autolabel-kit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "alkit/dataset_io.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "alkit/errors.h"
#include "json.hpp"

namespace alkit {

namespace {

using Json = nlohmann::ordered_json;

// Parse failure tagged with the field that caused it; converted into a
// DataError carrying the line number by the caller.
struct FieldError {
  std::string field;
  std::string message;
};

[[noreturn]] void Fail(std::string field, std::string message) {
  throw FieldError{std::move(field), std::move(message)};
}

Json ObjectToJson(const ObjectLabel& obj) {
  Json j;
  j["cls"] = obj.class_name;
  if (obj.confidence) j["conf"] = *obj.confidence;
  if (obj.object_id) j["id"] = *obj.object_id;
  const auto box = obj.box.ToArray();
  j["box"] = Json::array();
  for (double v : box) j["box"].push_back(v);
  return j;
}

Json FrameToJson(const Frame& frame) {
  Json j;
  j["seq"] = frame.sequence_id;
  j["idx"] = frame.frame_index;
  j["weather"] = std::string(ToString(frame.weather));
  j["road"] = std::string(ToString(frame.road));
  j["objects"] = Json::array();
  for (const ObjectLabel& obj : frame.objects) {
    j["objects"].push_back(ObjectToJson(obj));
  }
  return j;
}

const Json& Require(const Json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) Fail(path + key, "missing");
  return *it;
}

std::string RequireString(const Json& j, const char* key,
                          const std::string& path) {
  const Json& v = Require(j, key, path);
  if (!v.is_string()) Fail(path + key, "expected a string");
  return v.get<std::string>();
}

double RequireNumber(const Json& v, const std::string& field) {
  if (!v.is_number()) Fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) Fail(field, "non-finite number");
  return d;
}

void RejectUnknownKeys(const Json& j, std::initializer_list<std::string_view> allowed,
                       const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (std::string_view a : allowed) known = known || it.key() == a;
    if (!known) Fail(path + it.key(), "unknown key");
  }
}

ObjectLabel ObjectFromJson(const Json& j, const std::string& path) {
  if (!j.is_object()) Fail(path, "expected an object");
  RejectUnknownKeys(j, {"cls", "conf", "id", "box"}, path + ".");
  std::string cls = RequireString(j, "cls", path + ".");
  if (cls.empty()) Fail(path + ".cls", "empty class name");

  std::optional<double> conf;
  if (auto it = j.find("conf"); it != j.end()) {
    conf = RequireNumber(*it, path + ".conf");
    if (*conf < 0.0 || *conf > 1.0) Fail(path + ".conf", "outside [0, 1]");
  }
  std::optional<std::string> id;
  if (auto it = j.find("id"); it != j.end()) {
    if (!it->is_string()) Fail(path + ".id", "expected a string");
    id = it->get<std::string>();
  }

  const Json& box = Require(j, "box", path + ".");
  if (!box.is_array() || box.size() != 7) {
    Fail(path + ".box", "expected [cx,cy,cz,l,w,h,yaw]");
  }
  std::array<double, 7> v{};
  for (std::size_t i = 0; i < 7; ++i) {
    v[i] = RequireNumber(box[i], path + ".box[" + std::to_string(i) + "]");
  }
  try {
    return ObjectLabel{std::move(cls), Box3D(v[0], v[1], v[2], v[3], v[4],
                                             v[5], v[6]),
                       conf, std::move(id)};
  } catch (const std::invalid_argument& e) {
    Fail(path + ".box", e.what());
  }
}

Frame FrameFromJson(const Json& j) {
  if (!j.is_object()) Fail("<record>", "expected a JSON object");
  RejectUnknownKeys(j, {"seq", "idx", "weather", "road", "objects"}, "");
  Frame f;
  f.sequence_id = RequireString(j, "seq", "");
  if (f.sequence_id.empty()) Fail("seq", "empty sequence id");

  const Json& idx = Require(j, "idx", "");
  if (!idx.is_number_unsigned()) Fail("idx", "expected a non-negative integer");
  f.frame_index = idx.get<std::uint64_t>();

  const std::string weather = RequireString(j, "weather", "");
  auto w = ParseWeather(weather);
  if (!w) Fail("weather", "unknown value '" + weather + "'");
  f.weather = *w;

  const std::string road = RequireString(j, "road", "");
  auto r = ParseRoad(road);
  if (!r) Fail("road", "unknown value '" + road + "'");
  f.road = *r;

  const Json& objects = Require(j, "objects", "");
  if (!objects.is_array()) Fail("objects", "expected an array");
  f.objects.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    f.objects.push_back(
        ObjectFromJson(objects[i], "objects[" + std::to_string(i) + "]"));
  }
  return f;
}

std::string LineError(const std::string& source, std::size_t line,
                      const FieldError& e) {
  return source + ":" + std::to_string(line) + ": field '" + e.field +
         "': " + e.message;
}

}  // namespace

void WriteDataset(const Dataset& dataset, std::ostream& out) {
  ValidateDataset(dataset);
  Json header;
  header["format"] = kFormatName;
  header["version"] = kFormatVersion;
  header["split"] = dataset.split_name;
  out << header.dump() << '\n';
  for (const auto& [id, frames] : dataset.sequences) {
    for (const Frame& f : frames) out << FrameToJson(f).dump() << '\n';
  }
}

std::string SerializeDataset(const Dataset& dataset) {
  std::ostringstream os;
  WriteDataset(dataset, os);
  return os.str();
}

Dataset ReadDataset(std::istream& in, const std::string& source) {
  Dataset dataset;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      // Includes out-of-range numbers such as 1e999.
      throw DataError(source + ":" + std::to_string(line_no) +
                      ": malformed JSON: " + e.what());
    }
    try {
      if (!have_header) {
        if (!j.is_object() || j.value("format", "") != kFormatName) {
          Fail("format", std::string("expected header with format '") +
                             kFormatName + "'");
        }
        RejectUnknownKeys(j, {"format", "version", "split"}, "");
        const Json& version = Require(j, "version", "");
        if (!version.is_number_integer() ||
            version.get<int>() != kFormatVersion) {
          Fail("version", "unsupported version");
        }
        if (auto it = j.find("split"); it != j.end()) {
          if (!it->is_string()) Fail("split", "expected a string");
          dataset.split_name = it->get<std::string>();
        }
        have_header = true;
        continue;
      }
      Frame f = FrameFromJson(j);
      auto& frames = dataset.sequences[f.sequence_id];
      if (!frames.empty() && f.frame_index <= frames.back().frame_index) {
        Fail("idx", "frame indices of sequence '" + f.sequence_id +
                        "' not strictly increasing");
      }
      frames.push_back(std::move(f));
    } catch (const FieldError& e) {
      throw DataError(LineError(source, line_no, e));
    } catch (const Json::exception& e) {
      throw DataError(source + ":" + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  if (in.bad()) throw IoError(source + ": read failure");
  if (!have_header) throw DataError(source + ":1: missing header record");
  return dataset;
}

void SaveDataset(const Dataset& dataset, const std::filesystem::path& path) {
  const std::string text = SerializeDataset(dataset);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

Dataset LoadDataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return ReadDataset(in, path.string());
}

}  // namespace alkit
