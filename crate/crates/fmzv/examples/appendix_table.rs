//! The binomial-sum decomposition: six closed parts against the brute
//! triple sum, printed as CSV for the even-parity grid.

use fmzv::{appendix, report};

fn main() -> fmzv::Result<()> {
    let rows = appendix::table_rows(6)?;
    print!("{}", report::appendix_csv(&rows)?);
    Ok(())
}
