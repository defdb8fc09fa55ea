//! Closed forms the computation is expected to reproduce, in canonical
//! surd text. They are parsed and compared exactly; nothing downstream
//! uses them as inputs.

/// Left end of `T[4,3]`, `[4;3,overline(1,4,1,4,1,3)]`.
pub const ROOT_LO: &str = "(783 + sqrt(26565))/222";
/// Right end of `T[4,3]`, `[4;3,overline(4,1,4,1,3,1)]`.
pub const ROOT_HI: &str = "(5501 - sqrt(26565))/1238";

pub const LAMBDA: &str = "(228339 + 83497*sqrt(26565))/14071116";
pub const TAU_LOWER: &str = "(83497*sqrt(26565) - 228339)/13158329";
pub const GAMMA: &str = "(188261210808537 - 1136812239479*sqrt(26565))/173141622072241";

pub const PRODUCT_LO: &str = "(106609 + 261*sqrt(26565))/8214";
pub const PRODUCT_HI: &str = "(15143783 - 5501*sqrt(26565))/766322";

pub const DELTA: &str = "111*(397 + sqrt(26565))/65522";

/// `10 + 6√2`, the value the spectrum bound is compared against.
pub const TEN_PLUS_SIX_ROOT_TWO: &str = "10 + 6*sqrt(2)";

/// Per segment type: the two ratio-bound expressions and the decimal cap
/// (in thousandths) they must not exceed.
pub const TYPE_BOUNDS: [(&str, &str, u32); 9] = [
    ("(-98845 + 678*sqrt(26565))/168340", "(1714 + 16935*sqrt(26565))/2895005", 964),
    ("(-3102208 + 28527*sqrt(26565))/12625009", "(734627 + 22099*sqrt(26565))/5347148", 811),
    ("(-327577 + 11883*sqrt(26565))/3835324", "(142707 + 31409*sqrt(26565))/5780868", 911),
    ("(734627 + 22099*sqrt(26565))/5347148", "(871925 + 10719*sqrt(26565))/26671920", 811),
    ("(142707 + 31409*sqrt(26565))/5780868", "(47481125 + 242609*sqrt(26565))/241501492", 911),
    ("(-1760165 + 12317*sqrt(26565))/3740264", "(228339 + 83497*sqrt(26565))/14071116", 984),
    (
        "(124744719 + 3698485*sqrt(26565))/897620716",
        "(5862625949 + 36639108*sqrt(26565))/113824090231",
        811,
    ),
    ("(24202879 + 5279855*sqrt(26565))/973087996", "(61036589 + 376740*sqrt(26565))/301409236", 910),
    (
        "(-2678249986 + 26487231*sqrt(26565))/13906866931",
        "(7015092919 + 43130255*sqrt(26565))/18089104276",
        777,
    ),
];
