#!/usr/bin/env python3
# Copyright 2026 The Moyal Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Prepends the Apache-2.0 header to project sources. Idempotent."""

import pathlib
import sys

NOTICE = """Copyright 2026 The Moyal Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License."""

DIRS = ("core", "tools", "tests", "benchmarks", "scripts")
SLASH = {".cpp", ".hpp", ".h", ".cc"}
HASH = {".cmake", ".txt", ".in", ".py"}


def header(prefix):
  return "".join(f"{prefix} {l}".rstrip() + "\n" for l in NOTICE.splitlines()) + "\n"


def candidates(root):
  yield root / "CMakeLists.txt"
  for d in DIRS:
    for p in sorted((root / d).rglob("*")):
      if p.is_file() and (p.suffix in SLASH or p.suffix in HASH):
        if p.suffix == ".txt" and p.name != "CMakeLists.txt":
          continue
        yield p


def main():
  root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else ".").resolve()
  changed = 0
  for p in candidates(root):
    text = p.read_text()
    if "Copyright 2026 The Moyal Authors" in text[:400]:
      continue
    h = header("//" if p.suffix in SLASH else "#")
    if text.startswith("#!"):
      first, _, rest = text.partition("\n")
      text = f"{first}\n{h}{rest}"
    else:
      text = h + text
    p.write_text(text)
    changed += 1
  print(f"{changed} files updated")


if __name__ == "__main__":
  main()
