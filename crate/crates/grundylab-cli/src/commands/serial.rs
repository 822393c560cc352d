use serde_json::json;

use grundylab::serialnim::{
    serial_grundy, serial_winning_move, two_heap_table, SerialPosition,
};

use crate::render::{render_value_row, resolve_format, Format};
use crate::rulespec::parse_u64_list;
use crate::CliError;

fn parse_position(heaps: &str) -> Result<SerialPosition, CliError> {
    let sizes = parse_u64_list(heaps).map_err(|pos| {
        CliError::usage(format!(
            "--heaps expects comma-separated sizes (item {pos})"
        ))
    })?;
    SerialPosition::new(sizes).map_err(|e| CliError::domain(e.to_string()))
}

pub fn solve(heaps: &str, format: Option<Format>) -> Result<(), CliError> {
    let position = parse_position(heaps)?;
    let value = serial_grundy(&position);
    match resolve_format(format) {
        Format::Json => println!(
            "{}",
            json!({ "heaps": position.heaps(), "grundy": value })
        ),
        Format::Csv => println!("grundy\n{value}"),
        Format::Table => println!("{value}"),
    }
    Ok(())
}

pub fn winning_move(heaps: &str, format: Option<Format>) -> Result<(), CliError> {
    let position = parse_position(heaps)?;
    let value = serial_grundy(&position);
    let reduction = serial_winning_move(&position);
    match resolve_format(format) {
        Format::Json => println!(
            "{}",
            json!({
                "heaps": position.heaps(),
                "grundy": value,
                "new_leftmost": reduction,
            })
        ),
        Format::Csv => match reduction {
            Some(size) => println!("grundy,new_leftmost\n{value},{size}"),
            None => println!("grundy,new_leftmost\n{value},"),
        },
        Format::Table => match reduction {
            Some(size) => {
                println!("grundy {value}: reduce the leftmost heap to {size}")
            }
            None => println!("grundy 0: no winning move (previous-player win)"),
        },
    }
    Ok(())
}

pub fn table(second: u64, max_first: u64, format: Option<Format>) -> Result<(), CliError> {
    let values = two_heap_table(second, max_first)?;
    match resolve_format(format) {
        Format::Json => println!(
            "{}",
            json!({ "second": second, "values": values })
        ),
        Format::Csv => {
            println!("a,value");
            for (a, v) in values.iter().enumerate() {
                println!("{a},{v}");
            }
        }
        Format::Table => print!("{}", render_value_row("v", &values)),
    }
    Ok(())
}
