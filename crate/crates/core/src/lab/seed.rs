// Copyright 2026 The aqo-recall Authors
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

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Coordinates of one instance inside a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedKey {
    pub master_seed: u64,
    pub protocol_id: u64,
    pub p: u64,
    pub gamma_index: u64,
    pub time_index: u64,
    pub instance: u64,
}

/// `h = splitmix64(master)`, then `h = splitmix64(h ^ field)` for protocol,
/// `p`, bias index, time index and instance index in that order.
pub fn instance_seed(key: SeedKey) -> u64 {
    [
        key.protocol_id,
        key.p,
        key.gamma_index,
        key.time_index,
        key.instance,
    ]
    .into_iter()
    .fold(splitmix64(key.master_seed), |h, field| {
        splitmix64(h ^ field)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // first outputs of the SplitMix64 generator seeded with 0
        assert_eq!(splitmix64(0), 0xe220_a839_7b1d_cdaf);
        assert_eq!(splitmix64(0x9e37_79b9_7f4a_7c15), 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn fields_change_the_seed() {
        let base = SeedKey {
            master_seed: 42,
            protocol_id: 0,
            p: 3,
            gamma_index: 1,
            time_index: 0,
            instance: 7,
        };
        let s = instance_seed(base);
        assert_eq!(s, instance_seed(base));
        for other in [
            SeedKey {
                master_seed: 43,
                ..base
            },
            SeedKey {
                protocol_id: 1,
                ..base
            },
            SeedKey { p: 4, ..base },
            SeedKey {
                gamma_index: 2,
                ..base
            },
            SeedKey {
                time_index: 1,
                ..base
            },
            SeedKey {
                instance: 8,
                ..base
            },
        ] {
            assert_ne!(s, instance_seed(other));
        }
    }
}
