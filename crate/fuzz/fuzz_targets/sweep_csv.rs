// Copyright 2026 The tomodiscord Authors
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

#![no_main]

use libfuzzer_sys::fuzz_target;
use tomodiscord::cli::sweep::{read_rows, write_rows};

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = read_rows(data) {
        let mut out = Vec::new();
        write_rows(&mut out, &rows).unwrap();
        let back = read_rows(out.as_slice()).expect("written rows must parse");
        assert_eq!(back.len(), rows.len());
    }
});
