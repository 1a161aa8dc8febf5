// include/cohort/cli.h

// Copyright 2026  The cohort authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef COHORT_CLI_H_
#define COHORT_CLI_H_

#include <string>
#include <vector>

namespace cohort {

// Exit codes: 0 ok, 1 usage, 2 data, 3 numeric.
int CliMain(int argc, const char *const *argv);
int CliMain(const std::vector<std::string> &args);  // args exclude argv[0]

}  // namespace cohort

#endif  // COHORT_CLI_H_
