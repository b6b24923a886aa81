//! Minimal UTC timestamp and calendar-date handling.
//!
//! Timestamps are stored as seconds since the Unix epoch. Parsing and
//! formatting of ISO-8601 strings happens at the IO boundary in the
//! companion crate; here we only need the conversion between an instant and
//! its (date, hour) block, which uses the standard civil-calendar algorithm.

use alloc::format;
use alloc::string::String;
use core::fmt;

pub const SECS_PER_HOUR: i64 = 3600;
pub const SECS_PER_DAY: i64 = 86_400;

/// An instant in UTC with second precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UtcTimestamp(pub i64);

impl UtcTimestamp {
    pub fn from_unix_seconds(secs: i64) -> Self {
        UtcTimestamp(secs)
    }

    pub fn unix_seconds(&self) -> i64 {
        self.0
    }

    /// Calendar date of this instant (UTC).
    pub fn date(&self) -> Date {
        Date::from_day_number(self.0.div_euclid(SECS_PER_DAY))
    }

    /// Hour of day in 0..=23 (UTC).
    pub fn hour(&self) -> u8 {
        (self.0.rem_euclid(SECS_PER_DAY) / SECS_PER_HOUR) as u8
    }

    /// Absolute distance to another instant, in seconds.
    pub fn distance(&self, other: UtcTimestamp) -> i64 {
        (self.0 - other.0).abs()
    }
}

/// A calendar date in the proleptic Gregorian calendar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Date {
    pub year: i32,
    pub month: u8,
    pub day: u8,
}

impl Date {
    pub fn new(year: i32, month: u8, day: u8) -> Self {
        Date { year, month, day }
    }

    /// Days since 1970-01-01 (Howard Hinnant's days_from_civil).
    pub fn day_number(&self) -> i64 {
        let y = if self.month <= 2 {
            self.year as i64 - 1
        } else {
            self.year as i64
        };
        let era = if y >= 0 { y } else { y - 399 } / 400;
        let yoe = y - era * 400;
        let m = self.month as i64;
        let d = self.day as i64;
        let doy = (153 * (if m > 2 { m - 3 } else { m + 9 }) + 2) / 5 + d - 1;
        let doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
        era * 146_097 + doe - 719_468
    }

    /// Inverse of [`Date::day_number`] (civil_from_days).
    pub fn from_day_number(days: i64) -> Self {
        let z = days + 719_468;
        let era = if z >= 0 { z } else { z - 146_096 } / 146_097;
        let doe = z - era * 146_097;
        let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
        let y = yoe + era * 400;
        let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
        let mp = (5 * doy + 2) / 153;
        let d = (doy - (153 * mp + 2) / 5 + 1) as u8;
        let m = if mp < 10 { mp + 3 } else { mp - 9 } as u8;
        Date {
            year: (if m <= 2 { y + 1 } else { y }) as i32,
            month: m,
            day: d,
        }
    }

    /// Timestamp of this date at the given hour, minute 00 second 00.
    pub fn at_hour(&self, hour: u8) -> UtcTimestamp {
        UtcTimestamp(self.day_number() * SECS_PER_DAY + hour as i64 * SECS_PER_HOUR)
    }

    /// The `MM-DD` symbol used in encoder input sequences.
    pub fn month_day_symbol(&self) -> String {
        format!("{:02}-{:02}", self.month, self.day)
    }
}

impl fmt::Display for Date {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}
