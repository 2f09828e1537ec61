/** Fixed-capacity ring buffer; pushing past capacity drops the oldest. */
export class RingBuffer<T> {
  private buf: T[];
  private start = 0;
  private count = 0;

  constructor(readonly capacity: number) {
    if (!Number.isInteger(capacity) || capacity <= 0) {
      throw new RangeError(`capacity must be a positive integer, got ${capacity}`);
    }
    this.buf = new Array<T>(capacity);
  }

  get length(): number {
    return this.count;
  }

  push(item: T): void {
    const end = (this.start + this.count) % this.capacity;
    this.buf[end] = item;
    if (this.count < this.capacity) {
      this.count += 1;
    } else {
      this.start = (this.start + 1) % this.capacity;
    }
  }

  /** Index 0 is the oldest retained item. */
  at(i: number): T {
    if (!Number.isInteger(i) || i < 0 || i >= this.count) {
      throw new RangeError(`index ${i} out of range 0..${this.count - 1}`);
    }
    return this.buf[(this.start + i) % this.capacity];
  }

  last(): T | undefined {
    return this.count === 0 ? undefined : this.at(this.count - 1);
  }

  clear(): void {
    this.start = 0;
    this.count = 0;
    this.buf = new Array<T>(this.capacity);
  }

  toArray(): T[] {
    const out = new Array<T>(this.count);
    for (let i = 0; i < this.count; i++) out[i] = this.at(i);
    return out;
  }

  /** Iterate oldest to newest without allocating. */
  forEach(fn: (item: T, i: number) => void): void {
    for (let i = 0; i < this.count; i++) fn(this.at(i), i);
  }
}
