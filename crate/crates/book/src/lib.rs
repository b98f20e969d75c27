// Copyright 2026 the chordarc Authors
// SPDX-License-Identifier: Apache-2.0

//! The guide in `book/` compiled as doc-tests, one module per chapter so a
//! failing snippet points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/curves.md")]
pub mod curves {}
#[doc = include_str!("../../../book/src/pairs.md")]
pub mod pairs {}
#[doc = include_str!("../../../book/src/flows.md")]
pub mod flows {}
#[doc = include_str!("../../../book/src/monitors.md")]
pub mod monitors {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
