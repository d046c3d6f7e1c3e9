#![no_main]

//! Numeric CSV tables: anything that parses must write back and reparse
//! to the same bits.

use deltashock_cli::output::Table;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(table) = Table::read_csv(data) else { return };
    let mut buf = Vec::new();
    table.write_csv(&mut buf).unwrap();
    let again = Table::read_csv(buf.as_slice()).unwrap();
    assert_eq!(table.columns, again.columns);
    let bits = |t: &Table| t.rows.iter().flatten().map(|v| v.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&table), bits(&again));
});
