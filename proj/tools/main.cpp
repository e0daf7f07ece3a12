// Copyright 2026 The knowsat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pthread.h>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Job {
  std::vector<std::string> args;
  int code = 0;
};

void* work(void* p) {
  auto* job = static_cast<Job*>(p);
  job->code = knowsat::cli::run(job->args, std::cout, std::cerr);
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  Job job;
  job.args.assign(argv + 1, argv + argc);
  // Deep user terms recurse in the parser; give it room.
  constexpr size_t kStack = size_t{512} << 20;
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kStack);
  pthread_t thread;
  if (pthread_create(&thread, &attr, work, &job) != 0) {
    work(&job);
  } else {
    pthread_join(thread, nullptr);
  }
  pthread_attr_destroy(&attr);
  std::cout.flush();
  return job.code;
}
