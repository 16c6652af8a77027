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

#ifndef ALKIT_DATASET_IO_H_
#define ALKIT_DATASET_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "alkit/labels.h"

namespace alkit {

// JSON-lines dataset files (.jsonl).
//
// Line 1 is the header {"format":"autolabel-kit","version":1,"split":...};
// every following line is one frame:
//
//   {"seq":"s0","idx":3,"weather":"Fog","road":"Urban",
//    "objects":[{"cls":"Sedan","conf":0.9,"id":"o1",
//                "box":[cx,cy,cz,l,w,h,yaw]}]}
//
// "conf" and "id" are optional. Numbers are written as the shortest decimal
// that parses back to the same double, so save/load round-trips bit-exactly.
// Frames are written sequence by sequence in id order.

inline constexpr const char* kFormatName = "autolabel-kit";
inline constexpr int kFormatVersion = 1;

void WriteDataset(const Dataset& dataset, std::ostream& out);
std::string SerializeDataset(const Dataset& dataset);

// `source` names the stream in error messages. Throws DataError with the
// 1-based line number and offending field on malformed input.
Dataset ReadDataset(std::istream& in, const std::string& source = "<stream>");

// Throws IoError when the file cannot be opened or written.
void SaveDataset(const Dataset& dataset, const std::filesystem::path& path);
Dataset LoadDataset(const std::filesystem::path& path);

}  // namespace alkit

#endif  // ALKIT_DATASET_IO_H_
